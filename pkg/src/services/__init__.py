"""Services module."""
from .fitness_service import triangle_sides, distance_score, angle_score, evaluate_fitness, compare, tournament_select
from .task_service import class_center, assign_tasks, group_tasks, initial_auxiliary, update_auxiliary
from .granular_ball_service import ball_stats, split_ball, generate_balls
from .smote_service import smote
from .evaluation_service import knn_classify, confusion_counts, g_mean, auc, score_predictions

__all__ = [
    'triangle_sides', 'distance_score', 'angle_score', 'evaluate_fitness', 'compare', 'tournament_select',
    'class_center', 'assign_tasks', 'group_tasks', 'initial_auxiliary', 'update_auxiliary',
    'ball_stats', 'split_ball', 'generate_balls',
    'smote',
    'knn_classify', 'confusion_counts', 'g_mean', 'auc', 'score_predictions'
]
