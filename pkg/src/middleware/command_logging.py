import logging
import time
from functools import wraps

logger = logging.getLogger(__name__)


def log_command(command_name):
    """Decorator to log a CLI command with its duration"""
    def decorator(func):
        @wraps(func)
        def wrapper(*args, **kwargs):
            start_time = time.time()
            log_data = {key: value for key, value in kwargs.items() if value is not None}
            logger.info(f"Command started: {command_name} {log_data}")

            try:
                result = func(*args, **kwargs)
                duration = time.time() - start_time

                logger.info(f"Command successful: {command_name} - Duration: {duration:.3f}s")
                return result

            except Exception as e:
                duration = time.time() - start_time
                logger.error(f"Command failed: {command_name} - Duration: {duration:.3f}s - Error: {str(e)}")
                raise

        return wrapper
    return decorator
