"""
Convergence summaries over per-task generation records.
"""
from collections import defaultdict
from typing import Dict, List, Sequence

import numpy as np

from models.evolution_models import GenerationRecord

def summarise_generation(records: Sequence[GenerationRecord]) -> Dict[str, float]:
    """Mean best D, mean best θ and feasible share over one generation's records."""
    if not records:
        return {"mean_best_d": 0.0, "mean_best_theta": 0.0, "feasible_fraction": 0.0}
    return {
        "mean_best_d": float(np.mean([r.best_d for r in records])),
        "mean_best_theta": float(np.mean([r.best_theta for r in records])),
        "feasible_fraction": float(np.mean([r.feasible for r in records])),
    }

def summarise_convergence(records: Sequence[GenerationRecord]) -> List[Dict[str, float]]:
    """One summary row per (arm, generation), ordered by arm then generation."""
    grouped = defaultdict(list)
    for record in records:
        grouped[(record.arm, record.generation)].append(record)
    rows = []
    for (arm, generation) in sorted(grouped):
        row = {"arm": arm, "generation": generation, "n_tasks": len(grouped[(arm, generation)])}
        row.update(summarise_generation(grouped[(arm, generation)]))
        rows.append(row)
    return rows

def convergence_area(summary: Sequence[Dict[str, float]]) -> float:
    """Area under the mean-best θ curve: the sum over generations."""
    return float(sum(row["mean_best_theta"] for row in summary))
