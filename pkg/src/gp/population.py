"""
Population of GP programs with their evaluated fitness and phenotypes.
"""
from dataclasses import dataclass, field
from typing import List, Optional
import numpy as np

from gp.program import Program
from models.evolution_models import FitnessValue

@dataclass
class Population:
    """
    Programs of one task plus parallel fitness and phenotype lists.

    fitnesses and phenotypes stay None until the population is evaluated; a
    phenotype is None when the program overflowed.
    """
    programs: List[Program]
    fitnesses: Optional[List[FitnessValue]] = None
    phenotypes: Optional[List[Optional[np.ndarray]]] = None

    def __len__(self) -> int:
        return len(self.programs)

    @property
    def evaluated(self) -> bool:
        return self.fitnesses is not None and len(self.fitnesses) == len(self.programs)

    def max_depth(self) -> int:
        return max(p.depth for p in self.programs)
