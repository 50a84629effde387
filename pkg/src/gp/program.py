"""
GP expression trees whose phenotype is one synthetic minority instance.

Trees are immutable. Operators build offspring by rebuilding only the path
from the root to the changed node, so unchanged subtrees are shared between
parents and offspring, and a subtree's evaluated vector is memoised on the
node itself.
"""
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterator, List, Optional, Tuple, Union
import numpy as np

from utils.errors import ProgramEvaluationError

class Op(str, Enum):
    """Function set: elementwise +, -, * and protected division."""
    ADD = "add"
    SUB = "sub"
    MUL = "mul"
    DIV = "div"

@dataclass(frozen=True)
class MinRef:
    """Terminal referring to one row of the minority pool."""
    index: int
    depth: int = field(default=1, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)

@dataclass(frozen=True)
class Constant:
    """Terminal broadcasting a scalar in [-1, 1] to every feature."""
    value: float
    depth: int = field(default=1, init=False, compare=False, repr=False)
    size: int = field(default=1, init=False, compare=False, repr=False)

@dataclass(frozen=True)
class Function:
    """Binary function node."""
    op: Op
    left: "Node"
    right: "Node"
    depth: int = field(default=0, init=False, compare=False, repr=False)
    size: int = field(default=0, init=False, compare=False, repr=False)
    _memo: Optional[tuple] = field(default=None, init=False, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "depth", 1 + max(self.left.depth, self.right.depth))
        object.__setattr__(self, "size", 1 + self.left.size + self.right.size)

Node = Union[Function, MinRef, Constant]
Path = Tuple[int, ...]

# memo marker for subtrees that overflowed on a given pool
_OVERFLOW = None

def _evaluate_node(node: Node, pool: np.ndarray) -> np.ndarray:
    # evaluate() turns floating-point errors into exceptions
    if isinstance(node, MinRef):
        return pool[node.index]
    if isinstance(node, Constant):
        return np.full(pool.shape[1], node.value)

    memo = node._memo
    if memo is not None and memo[0] is pool:
        if memo[1] is _OVERFLOW:
            raise ProgramEvaluationError(f"{node.op.value} subtree overflows")
        return memo[1]

    try:
        left = _evaluate_node(node.left, pool)
        right = _evaluate_node(node.right, pool)
        if node.op is Op.ADD:
            value = left + right
        elif node.op is Op.SUB:
            value = left - right
        elif node.op is Op.MUL:
            value = left * right
        else:
            value = np.divide(left, right, out=np.ones_like(left), where=right != 0)
    except (FloatingPointError, ProgramEvaluationError) as e:
        object.__setattr__(node, "_memo", (pool, _OVERFLOW))
        raise ProgramEvaluationError(f"{node.op.value} subtree overflows") from e

    if not np.all(np.isfinite(value)):
        object.__setattr__(node, "_memo", (pool, _OVERFLOW))
        raise ProgramEvaluationError(f"{node.op.value} produced a non-finite value")
    value.setflags(write=False)
    object.__setattr__(node, "_memo", (pool, value))
    return value

def evaluate(program: "Program", pool: np.ndarray) -> np.ndarray:
    """
    Phenotype of a program over a minority pool of shape (n_min, d).

    Raises:
        ProgramEvaluationError: an intermediate value overflowed
    """
    with np.errstate(over="raise", invalid="raise", divide="raise"):
        value = _evaluate_node(program.root, pool)
    return np.array(value, dtype=np.float64, copy=True)

@dataclass(frozen=True)
class Program:
    """A GP individual; depth counts the root as 1."""
    root: Node

    @property
    def depth(self) -> int:
        return self.root.depth

    @property
    def size(self) -> int:
        return self.root.size

    def points(self) -> List[Tuple[Path, Node, int]]:
        """Every node in preorder as (path, node, level), root at level 1."""
        return list(iter_points(self.root))

    def point_at(self, index: int) -> Tuple[Path, Node, int]:
        """points()[index], found by descending on subtree sizes instead of walking the tree."""
        if not 0 <= index < self.root.size:
            raise IndexError(f"point {index} outside a program of size {self.root.size}")
        node, path, level = self.root, [], 1
        while index:
            index -= 1
            if index < node.left.size:
                node = node.left
                path.append(0)
            else:
                index -= node.left.size
                node = node.right
                path.append(1)
            level += 1
        return tuple(path), node, level

    def subtree(self, path: Path) -> Node:
        node = self.root
        for step in path:
            node = node.left if step == 0 else node.right
        return node

    def replace(self, path: Path, new: Node) -> "Program":
        """New program with the subtree at path replaced; other subtrees are shared."""
        return Program(_replace(self.root, path, new))

    def min_refs(self) -> List[int]:
        return [n.index for _, n, _ in iter_points(self.root) if isinstance(n, MinRef)]

    def constants(self) -> List[float]:
        return [n.value for _, n, _ in iter_points(self.root) if isinstance(n, Constant)]

    def to_text(self) -> str:
        """Parenthesised prefix form, e.g. (mul (add min:1 min:7) const:0.5)."""
        return _to_text(self.root)

    @classmethod
    def parse(cls, text: str) -> "Program":
        """Inverse of to_text."""
        tokens = _TOKEN.findall(text)
        if not tokens:
            raise ValueError("empty program text")
        root, position = _parse_node(tokens, 0)
        if position != len(tokens):
            raise ValueError(f"trailing tokens after program: {tokens[position:]}")
        return cls(root)

    def __str__(self) -> str:
        return self.to_text()

def iter_points(root: Node) -> Iterator[Tuple[Path, Node, int]]:
    stack = [((), root, 1)]
    while stack:
        path, node, level = stack.pop()
        yield path, node, level
        if isinstance(node, Function):
            stack.append((path + (1,), node.right, level + 1))
            stack.append((path + (0,), node.left, level + 1))

def _replace(node: Node, path: Path, new: Node) -> Node:
    if not path:
        return new
    if not isinstance(node, Function):
        raise ValueError("path descends below a terminal")
    if path[0] == 0:
        return Function(node.op, _replace(node.left, path[1:], new), node.right)
    return Function(node.op, node.left, _replace(node.right, path[1:], new))

def _to_text(node: Node) -> str:
    if isinstance(node, MinRef):
        return f"min:{node.index}"
    if isinstance(node, Constant):
        return f"const:{node.value!r}"
    return f"({node.op.value} {_to_text(node.left)} {_to_text(node.right)})"

_TOKEN = re.compile(r"\(|\)|[^\s()]+")

def _parse_node(tokens: List[str], position: int) -> Tuple[Node, int]:
    if position >= len(tokens):
        raise ValueError(f"program text ends early, expected an operand at token {position}")
    token = tokens[position]
    if token == "(":
        try:
            op = Op(tokens[position + 1])
        except (IndexError, ValueError):
            raise ValueError(f"unknown function at token {position + 1}") from None
        left, position = _parse_node(tokens, position + 2)
        right, position = _parse_node(tokens, position)
        if position >= len(tokens) or tokens[position] != ")":
            raise ValueError(f"expected ')' at token {position}")
        return Function(op, left, right), position + 1
    if token.startswith("min:"):
        return MinRef(int(token[4:])), position + 1
    if token.startswith("const:"):
        return Constant(float(token[6:])), position + 1
    raise ValueError(f"unexpected token {token!r}")
