import os
import sys
import logging
from logging.handlers import RotatingFileHandler

# DON'T CHANGE THIS !!!
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))


import click

from src.commands.apply import apply_command, batch_command
from src.commands.embed import embed_command
from src.commands.info import info_command
from src.commands.laplacian import laplacian_command
from src.commands.solve import solve_circulant_command
from src.middleware.error_handlers import ErrorHandlingGroup, register_error_handlers
from src.services.pipeline_service import pipeline_service
from src.services.report_service import report_service

from config import select_config

LOG_FORMAT = '%(asctime)s %(levelname)s: %(message)s [in %(pathname)s:%(lineno)d]'


def configure_logging(config):
    """Attach a rotating file handler to the package logger when LOG_FILE is set."""
    logger = logging.getLogger("src")
    logger.setLevel(getattr(logging, config.LOG_LEVEL, logging.INFO))
    if not config.LOG_FILE:
        return logger
    if any(isinstance(handler, RotatingFileHandler) for handler in logger.handlers):
        return logger

    log_dir = os.path.dirname(config.LOG_FILE)
    if not os.path.exists(log_dir):
        os.makedirs(log_dir)

    file_handler = RotatingFileHandler(config.LOG_FILE, maxBytes=10240, backupCount=10)
    file_handler.setFormatter(logging.Formatter(LOG_FORMAT))
    file_handler.setLevel(logging.DEBUG)
    logger.addHandler(file_handler)
    return logger


@click.group(cls=ErrorHandlingGroup)
@click.option("--config", "config_name", type=click.Choice(["development", "production", "testing"]),
              help="Configuration profile (defaults to TOEPLITZ_SIM_CONFIG).")
@click.option("-v", "--verbose", is_flag=True, help="Also log to stderr.")
@click.pass_context
def cli(ctx, config_name, verbose):
    """Simulate block-encoded Toeplitz, Hankel and circulant matrix-vector products."""
    config = select_config(config_name)
    ctx.obj = config
    pipeline_service.config = config
    report_service.config = config
    logger = configure_logging(config)
    if verbose and not any(type(handler) is logging.StreamHandler for handler in logger.handlers):
        stream = logging.StreamHandler()
        stream.setFormatter(logging.Formatter(LOG_FORMAT))
        logger.addHandler(stream)


# Register commands
cli.add_command(apply_command)
cli.add_command(batch_command)
cli.add_command(solve_circulant_command)
cli.add_command(laplacian_command)
cli.add_command(info_command)
cli.add_command(embed_command)


# Setup error handling
register_error_handlers(cli)


if __name__ == "__main__":
    cli()
