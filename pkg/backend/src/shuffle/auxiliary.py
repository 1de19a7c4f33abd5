"""
Auxiliary real functions and constants behind the zone estimates.

Everything here depends only on the bias b (with a = 2 - b) and is evaluated in
floating point. The functions accept numpy arrays where that makes sense so
that rectangle_max can scan a whole grid at once.
"""
from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np
from loguru import logger
from scipy.optimize import bisect

from src.constants import (
    DEFAULT_EPSILON,
    GRID_STEP,
    INVERSE_TOLERANCE,
    MAX_TOLERANCE,
    REFINE_ROUNDS,
    SEQUENCE_MAX_STEPS,
)
from src.exceptions import DomainViolationError, InvalidInputError, NonTerminationError
from src.logger_decorator import log_engine_call

Box = tuple[tuple[float, float], tuple[float, float]]

# Upper bounds 1 + A_i for the three W-blocks of the first red sub-zone
W_BLOCK_EXPONENTS = (1.0, 2.0 / 3.0, 0.5)


def _ab(b: float) -> tuple[float, float]:
    b = float(b)
    if not 0 < b <= 1:
        raise InvalidInputError(f"Bias b must lie in (0, 1], got {b}")
    return 2.0 - b, b


def a_star(b: float) -> float:
    a, _ = _ab(b)
    return 2.0 - 1.0 / a


# ---------------------------------------------------------------------------
# Red zone, sub-zone II
# ---------------------------------------------------------------------------

def phi1(x, b: float):
    a, b = _ab(b)
    return (
        (a * b - b * b - a * b * x) ** 2 / (16 * a * b)
        + (a * a - a * b) / 2 * x**2
        + (2 * a * b - a * a) / 2 * x
        + (a * a - a * b) / 4
    )


def phi1_derivative(x, b: float):
    a, b = _ab(b)
    return (a * a - 7 * a * b / 8) * x + (7 * a * b - 4 * a * a + b * b) / 8


def phi2(x, b: float):
    """2 + (2/b) log phi1(x), defined where phi1 > 0."""
    value = phi1(x, b)
    if np.any(np.asarray(value) <= 0):
        raise DomainViolationError(f"phi2 needs phi1(x) > 0, got phi1({x}) = {value}")
    return 2 + 2 / float(b) * np.log(value)


def phi3(x: float, b: float) -> float:
    """Inverse of phi2 on (0.5, inf), found by bisection."""
    lo = 0.5
    floor = phi2(lo, b)
    if x <= floor:
        raise DomainViolationError(f"phi3 is defined on ({floor}, inf), got {x}")
    hi = 1.0
    while phi2(hi, b) <= x:
        hi *= 2
    return bisect(lambda y: phi2(y, b) - x, lo, hi, xtol=INVERSE_TOLERANCE)


def phi4(x: float, b: float) -> float:
    return (phi3(x, b) + x) / 2


def _iterate(step: Callable[[float], float], start: float, threshold: float, name: str) -> list[float]:
    sequence = [start]
    x = start
    while x <= threshold:
        if len(sequence) > SEQUENCE_MAX_STEPS:
            raise NonTerminationError(f"{name} did not pass {threshold} within {SEQUENCE_MAX_STEPS} steps")
        nxt = step(x)
        if nxt <= x:
            raise NonTerminationError(f"{name} stalled at {x}")
        sequence.append(nxt)
        x = nxt
    return sequence


@log_engine_call(log_result=False)
def red_zone_sequence(b: float) -> list[float]:
    """x_0 = 0.7, x_{t+1} = phi4(x_t), up to and including the first term above 1."""
    sequence = _iterate(lambda x: phi4(x, b), 0.7, 1.0, "phi4 sequence")
    logger.debug(f"phi4 sequence for b={b}: {len(sequence)} terms")
    return sequence


def red_two_envelope(x, b: float):
    """max(1/2, phi1(x)) bounds |Eig| in the red sub-zone II at lam_1 = x n."""
    return np.maximum(0.5, phi1(x, b))


# ---------------------------------------------------------------------------
# Red zone, sub-zones III and IV
# ---------------------------------------------------------------------------

def q_r(x, y, b: float):
    a, b = _ab(b)
    return (
        (a * a - b * b) / 4
        + (a * a - a * b) / 2 * (x * x - x)
        + (a * b - b * b) / 2 * (y * y - y)
        + a * b / 2 * (x - x * y / 2 - y * y / 2)
    )


def red_three_target(b: float) -> float:
    a, b = _ab(b)
    return a * a / 4 + 3 * a * b / 16 - b * b / 8


def red_four_target(b: float) -> float:
    a, b = _ab(b)
    return 0.25 * a * a + 0.0975 * a * b - 0.145 * b * b


def c_red_three(b: float) -> float:
    return 0.8 + 2 / float(b) * math.log(red_three_target(b))


def c_red_four(b: float) -> float:
    return 0.6 + 2 / float(b) * math.log(red_four_target(b))


# ---------------------------------------------------------------------------
# Red zone, sub-zone I
# ---------------------------------------------------------------------------

def lambda_ij_bound(i: int, j: int, b: float) -> float:
    """Upper bound on the envelope of |Eig| for mu in W_i and nu in W_j."""
    a, b = _ab(b)
    i, j = sorted((i, j))
    bounds = {
        (1, 1): 1 / 3,
        (1, 2): a * a / 8 + b * b / 12 + a * b / 6,
        (1, 3): 0.58 * a * a / 4 + b * b / 12 + a * b / 6,
        (2, 2): 1 / 2,
        (2, 3): 0.58 * a * a / 4 + b * b / 8 + a * b / 4,
        (3, 3): 0.58,
    }
    if (i, j) not in bounds:
        raise InvalidInputError(f"W-block indices must lie in 1..3, got ({i}, {j})")
    return bounds[(i, j)]


def kij_constants(b: float) -> dict[str, float]:
    """K_ij = A_i + A_j + (2/b) log Lambda_ij for the six block pairs."""
    out = {}
    for i in range(1, 4):
        for j in range(i, 4):
            exponent = W_BLOCK_EXPONENTS[i - 1] + W_BLOCK_EXPONENTS[j - 1]
            out[f"K{i}{j}"] = exponent + 2 / float(b) * math.log(lambda_ij_bound(i, j, b))
    return out


# ---------------------------------------------------------------------------
# Blue zone
# ---------------------------------------------------------------------------

def q_b(x, y, b: float):
    a, b = _ab(b)
    return (a * a - b * b) / 4 + a * b / 2 * (x - x * y / 2 - y * y / 2) + (a * b - b * b) / 2 * (y * y - y)


def blue_one_target(b: float, eps: float = DEFAULT_EPSILON) -> float:
    _, b = _ab(b)
    return 1 - b / 4 - 7 * b * b / 16 + eps


def blue_one_lower_bound(b: float) -> float:
    a, b = _ab(b)
    return -(a * a - b * b) / 4


def blue_two_lower_bound(b: float) -> float:
    a, b = _ab(b)
    return -(a * a + a * b - 2 * b * b) / 8


def k_blue_one(b: float, eps0: float = DEFAULT_EPSILON) -> float:
    a, b = _ab(b)
    return 0.5 + 2 / b * math.log(max((a * a - b * b) / 4, blue_one_target(b, eps0)))


def epsilon_valid(b: float, eps0: float = DEFAULT_EPSILON) -> bool:
    """Whether eps0 < 7b^2/16, the condition that makes k_blue_one negative."""
    _, b = _ab(b)
    return eps0 < 7 * b * b / 16


def l_blue(b: float) -> float:
    a, b = _ab(b)
    return 1 + 2 / b * math.log(a / 2)


def t_b(x, b: float):
    a, b = _ab(b)
    radicand = (2 * np.exp(b / 2 * (np.asarray(x, dtype=float) - 1)) - a) / (a * b)
    if np.any(radicand <= 0):
        raise DomainViolationError(f"T_B is defined on ({l_blue(b)}, inf), got {x}")
    return np.sqrt(radicand)


def scr_t_b(x, b: float):
    return (t_b(x, b) + x) / 2


def p_b(x, y, b: float):
    a, b = _ab(b)
    return (a * a + 3 * a * b) / 4 + a * b / 2 * (x * x - 2 * (x + y) + x * y) + (a * b - b * b) / 4 * y


def p_b_corner(beta: float, b: float) -> float:
    """P_B(1 + beta, 0) = (ab/2) beta^2 + a/2."""
    a, b = _ab(b)
    return a * b / 2 * beta * beta + a / 2


def j_blue(alpha: float, b: float) -> float:
    a, b = _ab(b)
    spread = float(scr_t_b(alpha, b))
    return max(
        1 - alpha + 2 / b * math.log(a * b / 2 * spread * spread + a / 2),
        1 - alpha + 2 / b * math.log(0.5),
    )


@log_engine_call(log_result=False)
def blue_zone_sequence(b: float) -> list[float]:
    """x_0 = 0, x_t = scrT_B(x_{t-1}), up to and including the first term above a* - 1."""
    sequence = _iterate(lambda x: float(scr_t_b(x, b)), 0.0, a_star(b) - 1, "T_B sequence")
    logger.debug(f"T_B sequence for b={b}: {len(sequence)} terms")
    return sequence


# ---------------------------------------------------------------------------
# Maxima over rectangles
# ---------------------------------------------------------------------------

def _ternary(g: Callable[[float], float], lo: float, hi: float, rounds: int) -> float:
    for _ in range(rounds):
        m1 = lo + (hi - lo) / 3
        m2 = hi - (hi - lo) / 3
        if g(m1) < g(m2):
            lo = m1
        else:
            hi = m2
    return (lo + hi) / 2


def rectangle_max(
    f: Callable,
    box: Box,
    step: float = GRID_STEP,
    rounds: int = REFINE_ROUNDS,
) -> tuple[float, tuple[float, float]]:
    """
    Maximum of f(x, y) over a closed box.

    A grid with spacing at most `step` (corners included) locates the best
    cell; alternating ternary searches in x and y then refine inside it.
    """
    (x0, x1), (y0, y1) = box
    if x1 < x0 or y1 < y0:
        raise InvalidInputError(f"Empty box {box}")
    xs = np.linspace(x0, x1, max(2, math.ceil((x1 - x0) / step) + 1))
    ys = np.linspace(y0, y1, max(2, math.ceil((y1 - y0) / step) + 1))
    grid = np.asarray(f(xs[:, None], ys[None, :]), dtype=float)
    i, j = np.unravel_index(np.argmax(grid), grid.shape)
    best_x, best_y, best = float(xs[i]), float(ys[j]), float(grid[i, j])

    lo_x, hi_x = max(x0, best_x - step), min(x1, best_x + step)
    lo_y, hi_y = max(y0, best_y - step), min(y1, best_y + step)
    x, y = best_x, best_y
    for _ in range(4):
        x = _ternary(lambda u: float(f(u, y)), lo_x, hi_x, rounds)
        y = _ternary(lambda v: float(f(x, v)), lo_y, hi_y, rounds)
    refined = float(f(x, y))
    if refined > best:
        return refined, (x, y)
    return best, (best_x, best_y)


def auxiliary_maxima(b: float, eps: float = DEFAULT_EPSILON, alpha: Optional[float] = None) -> dict[str, dict]:
    """
    The four function-maximum facts: measured maximum, closed-form target
    and whether the maximum stays below target + MAX_TOLERANCE.
    """
    a, b = _ab(b)
    star = a_star(b)
    delta = eps / (a * b)
    results = {}

    red_three = max(
        rectangle_max(lambda x, y: q_r(x, y, b), ((0.7, 1.0), (0.5, 0.7)))[0],
        rectangle_max(lambda x, y: q_r(x, y, b), ((0.5, 0.7), (0.7, 1.0)))[0],
    )
    results["q_r_red_three"] = _fact(red_three, red_three_target(b))
    results["q_r_red_four"] = _fact(
        rectangle_max(lambda x, y: q_r(x, y, b), ((0.7, 1.0), (0.7, 1.0)))[0], red_four_target(b)
    )
    results["q_b_blue_one"] = _fact(
        rectangle_max(lambda x, y: q_b(x, y, b), ((1.0, star + delta), (0.5, 1.0)))[0],
        blue_one_target(b, eps),
    )
    alpha = 0.0 if alpha is None else alpha
    beta = min(float(scr_t_b(alpha, b)), star - 1 + eps)
    results["p_b_blue_two"] = _fact(
        rectangle_max(lambda x, y: p_b(x, y, b), ((1 + alpha, 1 + beta), (0.0, 0.5)))[0],
        p_b_corner(beta, b),
    )
    return results


def _fact(measured: float, target: float) -> dict:
    return {"max": measured, "target": target, "holds": measured <= target + MAX_TOLERANCE}


@log_engine_call(log_result=False)
def zones_report(b: float, eps: float = DEFAULT_EPSILON) -> dict:
    """Constants, sequences and maxima behind the zone estimates at one bias."""
    kij = kij_constants(b)
    red = red_zone_sequence(b)
    blue = blue_zone_sequence(b)
    return {
        "b": b,
        "epsilon": eps,
        "a_star": a_star(b),
        "K_ij": kij,
        "K_ij_negative": all(value < 0 for value in kij.values()),
        "c_red_three": c_red_three(b),
        "c_red_four": c_red_four(b),
        "k_blue_one": k_blue_one(b, eps),
        "l_blue": l_blue(b),
        "epsilon_valid": epsilon_valid(b, eps),
        "red_sequence": red,
        "red_sequence_length": len(red),
        "blue_sequence": blue,
        "blue_sequence_length": len(blue),
        "j_blue": [j_blue(alpha, b) for alpha in blue[:-1]],
        "maxima": auxiliary_maxima(b, eps),
    }
