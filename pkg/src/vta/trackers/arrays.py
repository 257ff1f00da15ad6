"""Array-family trackers: two-pointer pair search and the sieve."""

from __future__ import annotations

from .. import core
from ..errors import IncompatibleInput
from ..tracejson import Trace
from .tasks import TaskSpec
from .visualizer import (Visualizer, set_pointer, show_comment, styles, update_style)

TWO_POINTER_PSEUDOCODE = (
    "1. l = 0, r = n-1",
    "2. while l < r:",
    "3.   s = a[l] + a[r]",
    "4.   if s == target: pair found",
    "5.   if s < target: move l right",
    "6.   else: move r left",
    "7. report the result",
)


def _sorted_numbers(task: TaskSpec) -> list:
    values = task.input_data.get("array")
    if not isinstance(values, list) or len(values) < 2:
        raise IncompatibleInput("two_pointer_search needs an array of at least 2 values")
    for v in values:
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise IncompatibleInput("two_pointer_search needs numeric values")
    if any(values[i] > values[i + 1] for i in range(len(values) - 1)):
        raise IncompatibleInput("two_pointer_search needs a sorted (non-decreasing) array")
    return list(values)


def run_two_pointer(task: TaskSpec) -> Trace:
    values = _sorted_numbers(task)
    target = task.extras.get("target")
    if isinstance(target, bool) or not isinstance(target, (int, float)):
        raise IncompatibleInput("two_pointer_search needs a numeric 'target'")
    n = len(values)
    state = core.VisualState(
        main_view=core.array_view(values),
        styles=styles("current", "comparing", "found"),
        pseudocode=TWO_POINTER_PSEUDOCODE,
    )
    viz = Visualizer("Two-Pointer Pair Sum", "Array", state)

    l, r = 0, n - 1
    viz.step("Place pointers at both ends", 1,
             [set_pointer("l", l), set_pointer("r", r), update_style([l, r], "current")])

    while l < r:
        s = values[l] + values[r]
        viz.step(f"a[{l}] + a[{r}] = {s}", 3,
                 [update_style([l, r], "comparing")])
        if s == target:
            viz.step(f"Found a[{l}] + a[{r}] = {target}", 4,
                     [[update_style([l, r], "found")],
                      [show_comment("result", f"answer: indices {l} and {r}",
                                    element=l)]])
            return viz.finish()
        if s < target:
            viz.step("Sum too small; advance l", 5,
                     [[update_style([l], "idle")],
                      [set_pointer("l", l + 1), update_style([l + 1, r], "current")]])
            l += 1
        else:
            viz.step("Sum too large; retreat r", 6,
                     [[update_style([r], "idle")],
                      [set_pointer("r", r - 1), update_style([l, r - 1], "current")]])
            r -= 1

    viz.step("Pointers met: no pair sums to the target", 7,
             [[update_style([l], "idle")],
              [show_comment("result", "answer: no pair found")]])
    return viz.finish()


SIEVE_PSEUDOCODE = (
    "1. mark 1 as not prime",
    "2. for i = 2 .. sqrt(n):",
    "3.   if i is still prime:",
    "4.     mark every multiple of i composite",
    "5. unmarked numbers are prime",
)


def run_sieve(task: TaskSpec) -> Trace:
    values = task.input_data.get("array")
    if not isinstance(values, list) or not values:
        raise IncompatibleInput("sieve_of_eratosthenes needs a non-empty array input")
    if values != list(range(1, len(values) + 1)):
        raise IncompatibleInput("sieve_of_eratosthenes needs the array [1, 2, ..., n]")
    n = len(values)
    state = core.VisualState(
        main_view=core.array_view(values),
        styles=styles("current", "prime", "composite"),
        pseudocode=SIEVE_PSEUDOCODE,
    )
    viz = Visualizer("Count Primes", "Array", state)

    is_prime = [True] * (n + 1)
    is_prime[0] = False
    if n >= 1:
        is_prime[1] = False
        viz.step("1 is not prime", 1, [update_style([0], "composite")])

    i = 2
    while i * i <= n:
        if is_prime[i]:
            viz.step(f"{i} is prime; sweep its multiples", 3,
                     [update_style([i - 1], "current")])
            for j in range(i * i, n + 1, i):
                is_prime[j] = False
                viz.step(f"mark {j} composite", 4, [update_style([j - 1], "composite")])
            viz.step(f"done with {i}", 2, [update_style([i - 1], "prime")])
        i += 1

    primes = [k for k in range(2, n + 1) if is_prime[k]]
    ops = []
    if primes:
        ops.append(update_style([k - 1 for k in primes], "prime"))
    ops.append(show_comment("result", f"answer: {len(primes)} primes"))
    viz.step(f"{len(primes)} primes remain", 5, ops)
    return viz.finish()
