import logging

import click

from src.exceptions import (
    DimensionMismatchError,
    InvalidParameterError,
    NotPowerOfTwoError,
    OracleCapExceededError,
    PostSelectionError,
    SingularCirculantError,
    SpecParseError,
    ZeroOperatorError,
    ZeroVectorError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_UNEXPECTED = 1
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_DIMENSION = 4
EXIT_ZERO_MATRIX = 5
EXIT_ZERO_VECTOR = 6
EXIT_SINGULAR = 7
EXIT_ORACLE_CAP = 8
EXIT_NOT_POWER_OF_TWO = 9
EXIT_POST_SELECTION = 10


class ErrorHandlingGroup(click.Group):
    """click group that turns registered exception types into exit codes.

    Handlers are looked up along the exception's MRO, so the most specific
    registration wins.
    """

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self.error_handlers = {}

    def errorhandler(self, exc_type):
        def decorator(func):
            self.error_handlers[exc_type] = func
            return func
        return decorator

    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except (click.exceptions.Exit, click.ClickException, click.Abort):
            raise
        except Exception as error:
            for klass in type(error).__mro__:
                handler = self.error_handlers.get(klass)
                if handler is not None:
                    message, exit_code = handler(error)
                    click.echo(f"error: {message}", err=True)
                    ctx.exit(exit_code)
            raise


def register_error_handlers(cli):
    """Register error handlers for the CLI group"""

    @cli.errorhandler(SpecParseError)
    def parse_error(error):
        """Handle malformed matrix or vector files"""
        logger.warning(f"Parse error: {error}")
        return f"could not parse input: {error}", EXIT_PARSE

    @cli.errorhandler(DimensionMismatchError)
    def dimension_mismatch(error):
        """Handle operands whose dimensions disagree"""
        logger.warning(f"Dimension mismatch: {error}")
        return f"dimension mismatch: {error}", EXIT_DIMENSION

    @cli.errorhandler(ZeroOperatorError)
    def zero_matrix(error):
        """Handle the identically zero matrix"""
        logger.warning(f"Zero matrix: {error}")
        return f"zero matrix: {error}", EXIT_ZERO_MATRIX

    @cli.errorhandler(ZeroVectorError)
    def zero_vector(error):
        """Handle the zero input vector"""
        logger.warning(f"Zero vector: {error}")
        return f"zero vector: {error}", EXIT_ZERO_VECTOR

    @cli.errorhandler(SingularCirculantError)
    def singular_circulant(error):
        """Handle singular or near-singular circulants"""
        logger.warning(f"Singular circulant at eigenvalue {error.index}: {error}")
        return str(error), EXIT_SINGULAR

    @cli.errorhandler(OracleCapExceededError)
    def oracle_cap(error):
        """Handle dense dumps above the oracle cap"""
        logger.warning(f"Oracle cap exceeded: {error}")
        return str(error), EXIT_ORACLE_CAP

    @cli.errorhandler(NotPowerOfTwoError)
    def not_power_of_two(error):
        """Handle register runs on non-power-of-two dimensions"""
        logger.warning(f"Not a power of two: {error}")
        return f"{error} (use --fast for general n)", EXIT_NOT_POWER_OF_TWO

    @cli.errorhandler(InvalidParameterError)
    def invalid_parameter(error):
        """Handle out-of-range scalar parameters"""
        logger.warning(f"Invalid parameter: {error}")
        return f"invalid parameter: {error}", EXIT_USAGE

    @cli.errorhandler(PostSelectionError)
    def post_selection(error):
        """Handle a broken circuit invariant"""
        logger.error(f"Post-selection invariant failed: {error}", exc_info=True)
        return f"circuit invariant failed: {error}", EXIT_POST_SELECTION

    @cli.errorhandler(ValueError)
    def value_error(error):
        """Handle remaining ValueError exceptions"""
        logger.error(f"Value error: {error}")
        return f"invalid input value: {error}", EXIT_USAGE

    @cli.errorhandler(OSError)
    def os_error(error):
        """Handle unreadable or unwritable files"""
        logger.error(f"File error: {error}")
        return f"file error: {error}", EXIT_PARSE

    @cli.errorhandler(Exception)
    def unexpected(error):
        """Handle any unhandled exceptions"""
        logger.error(f"Unhandled exception: {error}", exc_info=True)
        return "an unexpected error occurred", EXIT_UNEXPECTED
