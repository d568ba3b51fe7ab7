import click

from .config import Config
from .extensions import configure_logging

__version__ = '0.1.0'


def create_cli(config_class=Config):
    @click.group()
    @click.version_option(__version__, prog_name='kcpipe')
    @click.option('--log-level', default=None,
                  type=click.Choice(['DEBUG', 'INFO', 'WARNING', 'ERROR'], case_sensitive=False),
                  help='Overrides KC_LOG_LEVEL.')
    @click.pass_context
    def cli(ctx, log_level):
        """Knowledge-completion-enhanced graph ML pipeline."""
        ctx.ensure_object(dict)
        ctx.obj['config_class'] = config_class
        configure_logging(log_level or config_class.LOG_LEVEL)

    # Register commands
    from .commands import COMMANDS

    for command in COMMANDS:
        cli.add_command(command)

    return cli
