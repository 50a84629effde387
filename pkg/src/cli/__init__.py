"""Command-line subcommands."""
from .commands import cmd_resample, cmd_evaluate, cmd_ablate, cmd_gb_inspect, cmd_synth

__all__ = ['cmd_resample', 'cmd_evaluate', 'cmd_ablate', 'cmd_gb_inspect', 'cmd_synth']
