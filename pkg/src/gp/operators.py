"""
Initialization and genetic operators for GP programs.

All operators are pure: parents are never modified and offspring share
unchanged subtrees with them.
"""
from typing import List, Tuple
import numpy as np

from config.settings import Config
from gp.program import Constant, Function, MinRef, Node, Op, Program
from gp.population import Population

_OPS = tuple(Op)

def random_terminal(pool_size: int, rng: np.random.Generator) -> Node:
    """Constant with probability 1/(pool_size + 1), otherwise a uniform MinRef."""
    if rng.integers(pool_size + 1) == pool_size:
        low, high = Config.CONSTANT_RANGE
        return Constant(float(rng.uniform(low, high)))
    return MinRef(int(rng.integers(pool_size)))

def _random_op(rng: np.random.Generator) -> Op:
    return _OPS[int(rng.integers(len(_OPS)))]

def full_tree(depth: int, pool_size: int, rng: np.random.Generator) -> Node:
    if depth <= 1:
        return random_terminal(pool_size, rng)
    op = _random_op(rng)
    return Function(op, full_tree(depth - 1, pool_size, rng), full_tree(depth - 1, pool_size, rng))

def grow_tree(depth: int, pool_size: int, rng: np.random.Generator, function_root: bool = False) -> Node:
    """Grow a tree no deeper than depth; below the root each node is a function with probability 1/2."""
    if depth <= 1:
        return random_terminal(pool_size, rng)
    if not function_root and rng.random() < 0.5:
        return random_terminal(pool_size, rng)
    op = _random_op(rng)
    return Function(op, grow_tree(depth - 1, pool_size, rng), grow_tree(depth - 1, pool_size, rng))

def init_ramped_half_and_half(
    pop_size: int,
    max_depth: int,
    minority_pool_size: int,
    rng: np.random.Generator,
) -> Population:
    """
    Ramped half-and-half initial population.

    Individual i gets depth 2 + (i // 2) mod (max_depth - 1), so depths ramp
    over [2, max_depth]; even individuals are full trees, odd ones grown.
    """
    if pop_size < 2 or max_depth < 2 or minority_pool_size < 1:
        raise ValueError(
            f"invalid initialization: pop_size={pop_size}, max_depth={max_depth}, "
            f"minority_pool_size={minority_pool_size}"
        )
    programs: List[Program] = []
    for i in range(pop_size):
        depth = 2 + (i // 2) % (max_depth - 1)
        if i % 2 == 0:
            root = full_tree(depth, minority_pool_size, rng)
        else:
            root = grow_tree(depth, minority_pool_size, rng, function_root=True)
        programs.append(Program(root))
    return Population(programs)

def crossover_standard(
    p1: Program,
    p2: Program,
    rng: np.random.Generator,
    max_depth: int = Config.MAX_TREE_DEPTH,
    retries: int = Config.OPERATOR_RETRY_LIMIT,
) -> Tuple[Program, Program]:
    """
    Swap subtrees rooted at independently uniform points of both parents.

    Point pairs that push either offspring past max_depth are redrawn; after
    `retries` failed draws the parents are returned unchanged.
    """
    for _ in range(retries):
        path1, node1, level1 = p1.point_at(int(rng.integers(p1.size)))
        path2, node2, level2 = p2.point_at(int(rng.integers(p2.size)))
        if level1 - 1 + node2.depth > max_depth or level2 - 1 + node1.depth > max_depth:
            continue
        return p1.replace(path1, node2), p2.replace(path2, node1)
    return p1, p2

def crossover_transfer(
    target_parent: Program,
    aux_elite: Program,
    rng: np.random.Generator,
    max_depth: int = Config.MAX_TREE_DEPTH,
    retries: int = Config.OPERATOR_RETRY_LIMIT,
) -> Program:
    """
    Graft a subtree of an auxiliary elite into a non-root point of the target.

    Only the offspring rooted in the target parent is kept. A single-node
    target has no non-root point and is returned unchanged. When every draw
    exceeds max_depth, a random terminal of the elite is grafted instead,
    which always fits.
    """
    if target_parent.size < 2:
        return target_parent
    n_targets = target_parent.size - 1
    for _ in range(retries):
        path, _, level = target_parent.point_at(1 + int(rng.integers(n_targets)))
        _, donor, _ = aux_elite.point_at(int(rng.integers(aux_elite.size)))
        if level - 1 + donor.depth <= max_depth:
            return target_parent.replace(path, donor)
    path, _, _ = target_parent.point_at(1 + int(rng.integers(n_targets)))
    leaves = [node for _, node, _ in aux_elite.points() if node.size == 1]
    return target_parent.replace(path, leaves[int(rng.integers(len(leaves)))])

def mutate(
    p: Program,
    max_depth: int,
    rng: np.random.Generator,
    minority_pool_size: int,
    subtree_depth: int = Config.MUTATION_SUBTREE_DEPTH,
) -> Program:
    """Replace the subtree at a uniform point (root included) with a fresh grown subtree."""
    path, _, level = p.point_at(int(rng.integers(p.size)))
    limit = min(subtree_depth, max_depth - level + 1)
    return p.replace(path, grow_tree(limit, minority_pool_size, rng))
