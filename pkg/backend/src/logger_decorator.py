"""
Logger decorator for engine operations.
Provides consistent logging across the combinatorics, shuffle and LR modules.
Works on plain functions and on methods.
"""
import time
import functools
from typing import Any, Callable
from loguru import logger


def log_engine_call(
    log_args: bool = True,
    log_result: bool = True,
    log_errors: bool = True,
    log_execution_time: bool = True,
    max_result_length: int = 500,
    max_args_length: int = 200
) -> Callable:
    """
    Decorator to log engine operations with execution details.

    Args:
        log_args: Whether to log call arguments (default: True)
        log_result: Whether to log results (default: True)
        log_errors: Whether to log errors (default: True)
        log_execution_time: Whether to log execution time (default: True)
        max_result_length: Maximum length of result to log (default: 500)
        max_args_length: Maximum length of args to log (default: 200)

    Returns:
        Decorated function with logging capabilities

    Example:
        @log_engine_call(log_result=False)
        def full_spectrum(p: ShuffleParams) -> list[SpectrumEntry]:
            ...
    """
    def decorator(func: Callable) -> Callable:
        component = func.__module__.rsplit(".", 1)[-1]
        operation = func.__qualname__

        @functools.wraps(func)
        def wrapper(*args, **kwargs) -> Any:
            log_context = {
                "component": component,
                "operation": operation,
            }
            log = logger.bind(**log_context)

            log.info(f"[{component}] {operation}() called")

            if log_args:
                args_str = _format_args(args, kwargs, max_args_length)
                log.debug(f"[{component}] {operation}() args: {args_str}")

            start_time = time.time()
            try:
                result = func(*args, **kwargs)
            except Exception as e:
                execution_time = time.time() - start_time
                if log_errors:
                    log.opt(exception=True).error(
                        f"[{component}] {operation}() failed after {execution_time:.3f}s: {e}"
                    )
                raise

            execution_time = time.time() - start_time
            if log_execution_time:
                log.info(
                    f"[{component}] {operation}() completed in {execution_time:.3f}s"
                )
            if log_result:
                result_str = _format_result(result, max_result_length)
                log.debug(f"[{component}] {operation}() result: {result_str}")
            return result

        return wrapper
    return decorator


def _format_args(args: tuple, kwargs: dict, max_length: int) -> str:
    """
    Format call arguments for logging.

    Args:
        args: Positional arguments
        kwargs: Keyword arguments
        max_length: Maximum string length per argument

    Returns:
        Formatted string representation of arguments
    """
    parts = []
    for arg in args:
        arg_str = str(arg)
        if len(arg_str) > max_length:
            arg_str = arg_str[:max_length] + "..."
        parts.append(arg_str)

    for key, value in kwargs.items():
        value_str = str(value)
        if len(value_str) > max_length:
            value_str = value_str[:max_length] + "..."
        parts.append(f"{key}={value_str}")

    result = ", ".join(parts)
    if len(result) > max_length * 2:
        result = result[:max_length * 2] + "..."
    return result


def _format_result(result: Any, max_length: int) -> str:
    """
    Format a result for logging.

    Args:
        result: Function result
        max_length: Maximum string length

    Returns:
        Formatted string representation of result
    """
    if result is None:
        return "None"

    if isinstance(result, dict):
        keys = list(result.keys())[:5]
        keys_str = ", ".join(str(k) for k in keys)
        if len(result) > 5:
            keys_str += f", ... ({len(result)} total)"
        return f"dict(keys=[{keys_str}])"

    if isinstance(result, (list, tuple)):
        if len(result) == 0:
            return "[]"
        return f"{type(result).__name__}(length={len(result)})"

    shape = getattr(result, "shape", None)
    if shape is not None:
        return f"{type(result).__name__}(shape={shape})"

    result_str = str(result)
    if len(result_str) > max_length:
        return result_str[:max_length] + "..."
    return result_str
