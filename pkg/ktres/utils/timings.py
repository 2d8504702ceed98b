"""
Timing utilities module.

This module provides a decorator that measures and logs function execution
times, and keeps the last measured duration of every decorated function so
that text reports can show where the time went.
"""
import functools
import logging
import time
from typing import Any, Callable, Dict

_TIMINGS: Dict[str, float] = {}


def log_execution_time(func: Callable) -> Callable:
    """
    Calculate and log the computation time of a function.

    It uses the logger of the module where the function is defined to log
    the duration in seconds, and records it under ``module.qualname``.

    Parameters
    ----------
    func : Callable
        The function to be decorated.

    Returns
    -------
    Callable
        The wrapped function.
    """

    @functools.wraps(func)
    def wrapper(*args, **kwargs) -> Any:
        module_name = func.__module__
        logger = logging.getLogger(module_name)

        start_time = time.perf_counter()
        result = func(*args, **kwargs)
        end_time = time.perf_counter()

        duration = end_time - start_time
        _TIMINGS[f"{module_name}.{func.__qualname__}"] = duration
        logger.info(f"Execution time for {func.__name__}: {duration:.4f}s")

        return result

    return wrapper


def get_timings() -> Dict[str, float]:
    """Return a copy of the last recorded duration of each decorated function."""
    return dict(_TIMINGS)


def reset_timings() -> None:
    """Forget all recorded durations."""
    _TIMINGS.clear()
