"""
Task construction for multi-task oversampling: target pairing, grouping by
shared Min_t, and auxiliary-task identification.
"""
import dataclasses
from typing import Dict, List, Optional, Sequence
import numpy as np
from loguru import logger
from scipy.spatial.distance import cdist

from models.data_models import Dataset
from models.evolution_models import Task, TaskGroup
from preprocessor.dataset_processor import class_partition

def class_center(instances: np.ndarray) -> np.ndarray:
    """Componentwise mean of a nonempty set of instances."""
    instances = np.asarray(instances, dtype=np.float64)
    if instances.ndim != 2 or instances.shape[0] == 0:
        raise ValueError("class_center needs a nonempty (n, d) array")
    return instances.mean(axis=0)

def _nearest_to_center(train: Dataset, rows: np.ndarray) -> np.ndarray:
    """Rows sorted by distance to their class center, ties by row index."""
    points = train.instances[rows]
    distances = cdist(points, class_center(points)[None, :]).ravel()
    return rows[np.lexsort((rows, distances))]

def assign_tasks(train: Dataset) -> List[Task]:
    """
    One task per missing minority instance, n = |Maj| - |Min|.

    Maj_t runs over the n majority rows nearest the majority center; Min_t
    pairs with them in rank order over the minority rows nearest the
    minority center, cycling through the minority class when it has fewer
    than n rows.
    """
    train.require_both_classes()
    majority_rows, minority_rows = class_partition(train)
    n = majority_rows.shape[0] - minority_rows.shape[0]
    if n <= 0:
        return []

    maj_order = _nearest_to_center(train, majority_rows)[:n]
    min_order = _nearest_to_center(train, minority_rows)
    tasks = []
    for task_id in range(n):
        maj_row = int(maj_order[task_id])
        min_row = int(min_order[task_id % min_order.shape[0]])
        tasks.append(Task(
            id=task_id,
            maj_target=train.instances[maj_row],
            min_target=train.instances[min_row],
            maj_target_index=maj_row,
            min_target_key=min_row,
        ))
    logger.debug(
        f"Assigned {n} tasks over {min(n, min_order.shape[0])} distinct Min_t instances"
    )
    return tasks

def group_tasks(tasks: Sequence[Task]) -> List[TaskGroup]:
    """Partition task ids by shared Min_t, groups in order of first appearance."""
    members: Dict[int, List[int]] = {}
    for task in tasks:
        members.setdefault(task.min_target_key, []).append(task.id)
    return [TaskGroup(min_target_key=key, member_task_ids=tuple(ids)) for key, ids in members.items()]

def nearest_in_groups(vectors: np.ndarray, groups: Sequence[TaskGroup]) -> Dict[int, Optional[int]]:
    """
    Auxiliary of every task: the nearest other member of its group.

    Singleton groups fall back to the nearest task overall. Ties go to the
    lowest task id. With a single task there is no auxiliary.
    """
    vectors = np.asarray(vectors, dtype=np.float64)
    n_tasks = vectors.shape[0]
    auxiliary: Dict[int, Optional[int]] = {}
    global_distances = None
    for group in groups:
        ids = np.array(sorted(group.member_task_ids), dtype=np.int64)
        if ids.shape[0] >= 2:
            distances = cdist(vectors[ids], vectors[ids])
            np.fill_diagonal(distances, np.inf)
            for row, task_id in enumerate(ids):
                auxiliary[int(task_id)] = int(ids[int(np.argmin(distances[row]))])
            continue
        task_id = int(ids[0])
        if n_tasks < 2:
            auxiliary[task_id] = None
            continue
        if global_distances is None:
            global_distances = cdist(vectors, vectors)
            np.fill_diagonal(global_distances, np.inf)
        auxiliary[task_id] = int(np.argmin(global_distances[task_id]))
    return auxiliary

def initial_auxiliary(tasks: Sequence[Task], groups: Sequence[TaskGroup]) -> List[Task]:
    """Tasks with auxiliary_id set by nearest Maj_t."""
    if not tasks:
        return []
    auxiliary = nearest_in_groups(np.vstack([t.maj_target for t in tasks]), groups)
    return [dataclasses.replace(t, auxiliary_id=auxiliary[t.id]) for t in tasks]

def update_auxiliary(best_phenotypes: np.ndarray, groups: Sequence[TaskGroup]) -> Dict[int, Optional[int]]:
    """New auxiliary map from the distances between each task's best phenotype."""
    return nearest_in_groups(best_phenotypes, groups)
