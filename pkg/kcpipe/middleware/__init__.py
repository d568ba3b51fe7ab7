from .stage_guard import require_artifacts, stage_command

__all__ = ['require_artifacts', 'stage_command']
