"""
Triangle fitness of a synthetic instance against its (Maj_t, Min_t) targets
and the lexicographic selection order built on it.
"""
import math
from typing import Sequence, Tuple
import numpy as np

from models.evolution_models import FEASIBILITY_THRESHOLD, FitnessValue, Triangle
from gp.population import Population
from utils.errors import DegenerateFitnessError

_E = math.e

def triangle_sides(synthetic: np.ndarray, maj_t: np.ndarray, min_t: np.ndarray) -> Triangle:
    """Sides a (synthetic-Min_t), b (synthetic-Maj_t), c (Min_t-Maj_t)."""
    synthetic = np.asarray(synthetic, dtype=np.float64)
    maj_t = np.asarray(maj_t, dtype=np.float64)
    min_t = np.asarray(min_t, dtype=np.float64)
    if not synthetic.shape == maj_t.shape == min_t.shape:
        raise ValueError(
            f"dimension mismatch: synthetic {synthetic.shape}, Maj_t {maj_t.shape}, Min_t {min_t.shape}"
        )
    return Triangle(
        a=float(np.linalg.norm(synthetic - min_t)),
        b=float(np.linalg.norm(synthetic - maj_t)),
        c=float(np.linalg.norm(min_t - maj_t)),
    )

def distance_score(t: Triangle) -> float:
    """D = (e - e^(a/(a+b))) / (e - 1), in [0, 1] and decreasing in a/(a+b)."""
    total = t.a + t.b
    if total <= 0.0:
        raise DegenerateFitnessError("a + b = 0: synthetic coincides with both targets")
    d = (_E - math.exp(t.a / total)) / (_E - 1.0)
    return min(1.0, max(0.0, d))

def angle_score(t: Triangle) -> float:
    """Angle at the synthetic vertex in degrees."""
    if t.a <= 0.0 or t.b <= 0.0:
        raise DegenerateFitnessError(f"angle undefined for a={t.a}, b={t.b}")
    cosine = (t.a * t.a + t.b * t.b - t.c * t.c) / (2.0 * t.a * t.b)
    return math.degrees(math.acos(min(1.0, max(-1.0, cosine))))

def evaluate_fitness(synthetic: np.ndarray, maj_t: np.ndarray, min_t: np.ndarray) -> FitnessValue:
    """
    Fitness = [D, θ] of one phenotype.

    Degenerate cases never raise: a + b = 0 yields the worst fitness and an
    undefined angle is scored as 0 degrees.
    """
    t = triangle_sides(synthetic, maj_t, min_t)
    try:
        d = distance_score(t)
    except DegenerateFitnessError:
        return FitnessValue.worst()
    try:
        theta = angle_score(t)
    except DegenerateFitnessError:
        theta = 0.0
    return FitnessValue(d_score=d, theta_degrees=theta, feasible=d > FEASIBILITY_THRESHOLD)

def fitness_key(f: FitnessValue) -> Tuple[int, float, float]:
    """Sort key realising compare: feasible first, then θ then D; infeasible by D."""
    if f.feasible:
        return (1, f.theta_degrees, f.d_score)
    return (0, f.d_score, 0.0)

def compare(f1: FitnessValue, f2: FitnessValue) -> int:
    """-1, 0 or 1 as f1 is worse than, equal to or better than f2."""
    k1, k2 = fitness_key(f1), fitness_key(f2)
    return (k1 > k2) - (k1 < k2)

def best_index(fitnesses: Sequence[FitnessValue]) -> int:
    """Index of the best fitness; ties go to the lowest index."""
    best = 0
    for i in range(1, len(fitnesses)):
        if fitness_key(fitnesses[i]) > fitness_key(fitnesses[best]):
            best = i
    return best

def ranked_indices(fitnesses: Sequence[FitnessValue]) -> np.ndarray:
    """Indices from best to worst; ties keep index order."""
    keys = [fitness_key(f) for f in fitnesses]
    order = sorted(range(len(keys)), key=lambda i: (tuple(-x for x in keys[i]), i))
    return np.array(order, dtype=np.int64)

def tournament_select(pop: Population, tournament_size: int, rng: np.random.Generator) -> int:
    """
    Index of the tournament winner.

    Draws tournament_size distinct indices uniformly and returns the best
    under compare; ties go to the lowest index.
    """
    if not pop.evaluated:
        raise ValueError("tournament selection needs an evaluated population")
    if not 1 <= tournament_size <= len(pop):
        raise ValueError(f"tournament_size {tournament_size} outside [1, {len(pop)}]")
    contenders = np.sort(rng.choice(len(pop), size=tournament_size, replace=False))
    winner = int(contenders[0])
    for i in contenders[1:]:
        if fitness_key(pop.fitnesses[i]) > fitness_key(pop.fitnesses[winner]):
            winner = int(i)
    return winner
