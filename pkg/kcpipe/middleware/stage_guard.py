import json
import logging
import sys
from functools import wraps
from pathlib import Path

import click

from ..errors import KCError, StageDependencyError
from ..artifacts import PRODUCED_BY

logger = logging.getLogger(__name__)


def _fail(payload, exit_code):
    click.echo(json.dumps(payload), err=True)
    sys.exit(exit_code)


def stage_command(stage):
    """Run a command body, turning errors into a JSON message and exit code."""
    def decorator(fn):
        @wraps(fn)
        def wrapper(*args, **kwargs):
            try:
                return fn(*args, **kwargs)
            except KCError as exc:
                logger.error('%s failed: %s', stage, exc.message)
                _fail({**exc.to_dict(), 'stage': stage}, exc.exit_code)
            except click.exceptions.Exit:
                raise
            except Exception as exc:
                logger.exception('%s failed with an internal error', stage)
                _fail({'error': str(exc), 'code': 'internal', 'stage': stage}, 1)
        return wrapper
    return decorator


def require_artifacts(out_dir, *relative_paths):
    """Raise a stage-dependency error naming the stage that produces a missing file."""
    for relative in relative_paths:
        if not (Path(out_dir) / relative).is_file():
            producer = PRODUCED_BY.get(Path(relative).name.split('.')[0], 'an earlier stage')
            raise StageDependencyError(
                f'{relative} not found in {out_dir}; run `{producer}` first',
                code=f'missing_{producer}')
