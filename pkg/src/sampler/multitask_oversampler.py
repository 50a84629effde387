"""
Multi-task GP oversampling with knowledge transfer.

Each task evolves its own population against one (Maj_t, Min_t) pair.
Populations advance in lockstep: at every generation boundary each task
publishes an elite snapshot, and transfer crossover reads only the snapshot
of its auxiliary task. Per-task random streams depend on (master_seed,
task_id) alone, so results do not depend on the worker count.
"""
import dataclasses
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from joblib import Parallel, delayed
from loguru import logger

from config.run_config import RunConfig
from gp.operators import crossover_standard, crossover_transfer, init_ramped_half_and_half, mutate
from gp.population import Population
from gp.program import Program, evaluate
from models.data_models import Dataset
from models.evolution_models import FitnessValue, GenerationRecord, Task
from services.convergence_service import summarise_generation
from services.fitness_service import best_index, evaluate_fitness, ranked_indices, tournament_select
from services.task_service import assign_tasks, group_tasks, initial_auxiliary, update_auxiliary
from utils.common import task_rng
from utils.errors import ProgramEvaluationError, SamplingError
from utils.logging_utils import log_generation_progress

@dataclass
class TaskState:
    """Mutable evolution state owned by exactly one task."""
    task: Task
    population: Population
    rng: np.random.Generator

@dataclass
class EvolutionResult:
    """Synthetic minority rows, one per task, plus the convergence history."""
    synthetic: np.ndarray
    tasks: List[Task]
    records: List[GenerationRecord] = field(default_factory=list)
    infeasible_task_ids: List[int] = field(default_factory=list)

class MultiTaskOversampler:
    """Evolves one synthetic minority instance per missing minority row."""

    def __init__(self, run_config: RunConfig, transfer_enabled: bool = True,
                 n_workers: int = 1, arm: str = ""):
        self.cfg = run_config.validate()
        self.transfer_enabled = transfer_enabled
        self.n_workers = max(1, int(n_workers))
        self.arm = arm or ("with_kt" if transfer_enabled else "without_kt")
        self.elite_size = max(1, math.ceil(self.cfg.elite_fraction_for_transfer * self.cfg.population_size_per_task))
        self._pool: Optional[np.ndarray] = None

    def _score(self, program: Program, task: Task) -> Tuple[Optional[np.ndarray], FitnessValue]:
        try:
            phenotype = evaluate(program, self._pool)
        except ProgramEvaluationError:
            return None, FitnessValue.worst()
        return phenotype, evaluate_fitness(phenotype, task.maj_target, task.min_target)

    def _evaluated(self, programs: List[Program], task: Task) -> Population:
        scored = [self._score(p, task) for p in programs]
        return Population(
            programs=programs,
            fitnesses=[f for _, f in scored],
            phenotypes=[ph for ph, _ in scored],
        )

    def _init_state(self, task: Task) -> TaskState:
        rng = task_rng(self.cfg.master_seed, task.id)
        programs = init_ramped_half_and_half(
            self.cfg.population_size_per_task, self.cfg.max_depth, self._pool.shape[0], rng
        ).programs
        return TaskState(task=task, population=self._evaluated(programs, task), rng=rng)

    def _elites(self, state: TaskState) -> List[Program]:
        order = ranked_indices(state.population.fitnesses)[: self.elite_size]
        return [state.population.programs[i] for i in order]

    def _breed(self, state: TaskState, aux_elites: Optional[List[Program]]) -> TaskState:
        """One generation of one task; consumes only this task's random stream."""
        cfg, rng, pop = self.cfg, state.rng, state.population
        size = cfg.population_size_per_task
        elite = best_index(pop.fitnesses)
        programs = [pop.programs[elite]]
        fitnesses = [pop.fitnesses[elite]]
        phenotypes = [pop.phenotypes[elite]]

        def add(child: Program) -> None:
            phenotype, fitness = self._score(child, state.task)
            programs.append(child)
            fitnesses.append(fitness)
            phenotypes.append(phenotype)

        transfer_cut = cfg.rate_standard_crossover + cfg.rate_transfer_crossover
        while len(programs) < size:
            draw = rng.random()
            transfer = cfg.rate_standard_crossover <= draw < transfer_cut
            if draw < cfg.rate_standard_crossover or (transfer and aux_elites is None):
                i = tournament_select(pop, cfg.tournament_size, rng)
                j = tournament_select(pop, cfg.tournament_size, rng)
                first, second = crossover_standard(pop.programs[i], pop.programs[j], rng, cfg.max_depth)
                add(first)
                if len(programs) < size:
                    add(second)
            elif transfer:
                i = tournament_select(pop, cfg.tournament_size, rng)
                donor = aux_elites[int(rng.integers(len(aux_elites)))]
                add(crossover_transfer(pop.programs[i], donor, rng, cfg.max_depth))
            else:
                i = tournament_select(pop, cfg.tournament_size, rng)
                add(mutate(pop.programs[i], cfg.max_depth, rng, self._pool.shape[0]))

        state.population = Population(programs=programs, fitnesses=fitnesses, phenotypes=phenotypes)
        return state

    def _best_phenotype(self, state: TaskState) -> Optional[np.ndarray]:
        """Phenotype of the best program that evaluated to a finite vector."""
        pop = state.population
        for i in ranked_indices(pop.fitnesses):
            if pop.phenotypes[i] is not None:
                return pop.phenotypes[i]
        return None

    def _refresh_auxiliaries(self, states: List[TaskState], groups) -> None:
        vectors = []
        for state in states:
            best = self._best_phenotype(state)
            vectors.append(best if best is not None else state.task.maj_target)
        auxiliary = update_auxiliary(np.vstack(vectors), groups)
        for state in states:
            if auxiliary[state.task.id] != state.task.auxiliary_id:
                state.task = dataclasses.replace(state.task, auxiliary_id=auxiliary[state.task.id])

    def _record(self, state: TaskState, generation: int) -> GenerationRecord:
        best = state.population.fitnesses[best_index(state.population.fitnesses)]
        return GenerationRecord(
            task_id=state.task.id,
            generation=generation,
            best_d=best.d_score,
            best_theta=best.theta_degrees,
            feasible=best.feasible,
            auxiliary_id=state.task.auxiliary_id if self.transfer_enabled else None,
            arm=self.arm,
        )

    def evolve(self, train: Dataset) -> EvolutionResult:
        """Run every task for cfg.generations generations and collect their best phenotypes."""
        train.require_both_classes()
        self._pool = train.minority_instances
        self._pool.setflags(write=False)
        tasks = assign_tasks(train)
        if not tasks:
            logger.info("Training set already balanced; no tasks to evolve")
            return EvolutionResult(synthetic=np.empty((0, train.n_features)), tasks=[])
        groups = group_tasks(tasks)
        tasks = initial_auxiliary(tasks, groups)
        logger.info(
            f"[{self.arm}] Evolving {len(tasks)} tasks in {len(groups)} groups "
            f"(pop {self.cfg.population_size_per_task}, {self.cfg.generations} generations, "
            f"{self.n_workers} worker(s))"
        )

        states = [self._init_state(task) for task in tasks]
        records: List[GenerationRecord] = []
        period = self.cfg.auxiliary_update_period
        with Parallel(n_jobs=self.n_workers, backend="threading") as parallel:
            for generation in range(1, self.cfg.generations + 1):
                if self.transfer_enabled and generation > 1 and (generation - 1) % period == 0:
                    self._refresh_auxiliaries(states, groups)
                snapshots: Dict[int, List[Program]] = {}
                if self.transfer_enabled:
                    snapshots = {state.task.id: self._elites(state) for state in states}
                jobs = (
                    delayed(self._breed)(
                        state,
                        snapshots.get(state.task.auxiliary_id) if state.task.auxiliary_id is not None else None,
                    )
                    for state in states
                )
                states = list(parallel(jobs))
                generation_records = [self._record(state, generation) for state in states]
                records.extend(generation_records)
                log_generation_progress(self.arm, generation, summarise_generation(generation_records))

        synthetic, infeasible = self._collect(states)
        return EvolutionResult(
            synthetic=synthetic,
            tasks=[state.task for state in states],
            records=records,
            infeasible_task_ids=infeasible,
        )

    def _collect(self, states: Sequence[TaskState]) -> Tuple[np.ndarray, List[int]]:
        rows, infeasible = [], []
        for state in states:
            phenotype = self._best_phenotype(state)
            if phenotype is None:
                raise SamplingError(f"task {state.task.id}: every program overflowed")
            if not state.population.fitnesses[best_index(state.population.fitnesses)].feasible:
                infeasible.append(state.task.id)
            rows.append(phenotype)
        if infeasible:
            logger.warning(
                f"[{self.arm}] {len(infeasible)} task(s) never reached a feasible individual: "
                f"{infeasible[:10]}{'...' if len(infeasible) > 10 else ''}"
            )
        return np.vstack(rows), infeasible

    def oversample(self, train: Dataset) -> Tuple[Dataset, EvolutionResult]:
        """Training set with the evolved minority rows appended."""
        result = self.evolve(train)
        if result.synthetic.shape[0] == 0:
            return train, result
        return train.with_minority(result.synthetic, source=f"{train.source}+evosampling"), result

def evolve_all(train: Dataset, cfg: RunConfig, transfer_enabled: bool = True, n_workers: int = 1) -> np.ndarray:
    """Synthetic minority instances, one per task, as an (n, d) array."""
    return MultiTaskOversampler(cfg, transfer_enabled, n_workers).evolve(train).synthetic
