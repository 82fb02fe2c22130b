"""
pylandauer.msc.Debug
====================

Decorator for measuring execution time of sweeps and other long-running
calls.

The measured duration is reported through `logging.debug`, so it only shows
up when the application runs with a verbose log level.

Examples
--------
>>> @Debug.timing()
... def run_sweep() -> None:
...     ...
...
>>> run_sweep()

"""

import logging
import time
from functools import wraps
from typing import Any
from typing import Callable


class Debug:
    """
    Static decorators that assist with profiling.
    """
    @staticmethod
    def timing(use_ns_timer: bool = False) -> Callable:
        """
        A decorator factory that logs the execution time of the decorated function.

        Parameters
        ----------
        use_ns_timer : bool, optional
            If True nanosecond precision timing is used.

        Returns
        -------
        Callable
            A decorator that wraps the target function with timing logic.
        """
        if use_ns_timer:
            time_fn = time.perf_counter_ns
            time_scale = 'ns'
        else:
            time_fn = time.perf_counter  # type: ignore
            time_scale = 's'

        def wrap_with_timing(fn: Callable) -> Callable:
            @wraps(fn)
            def timer(*args: Any, **kwargs: Any) -> Any:
                # Store start time
                start_time = time_fn()

                fn_result = fn(*args, **kwargs)

                # Calculate and log execution time
                duration = time_fn() - start_time
                logging.debug(f'Function {fn.__name__} took: '
                              f'{duration} {time_scale}')

                return fn_result

            return timer

        return wrap_with_timing
