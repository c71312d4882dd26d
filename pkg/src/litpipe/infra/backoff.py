"""Exponential backoff with full jitter, and retry with alternative inputs."""
from __future__ import annotations

import random
import time
from dataclasses import dataclass, field
from typing import Any, Callable, List, Optional, Sequence

from litpipe.errors import AttemptsExhaustedError, InvalidInputError, RetryableError


@dataclass
class BackoffPolicy:
    base_delay: float = 1.0
    factor: float = 2.0
    max_delay: float = 60.0
    max_attempts: int = 5

    def __post_init__(self):
        if self.base_delay <= 0:
            raise InvalidInputError("base_delay must be positive")
        if self.factor < 1:
            raise InvalidInputError("factor must be >= 1")
        if self.max_attempts < 1:
            raise InvalidInputError("max_attempts must be >= 1")


def delay_cap(policy: BackoffPolicy, attempt: int) -> float:
    """Upper bound of the jitter window for the given 1-based attempt."""
    return min(policy.max_delay, policy.base_delay * policy.factor ** (attempt - 1))


def next_delay(policy: BackoffPolicy, attempt: int, rng: random.Random) -> float:
    """Full-jitter delay: uniform in [0, min(max_delay, base * factor^(attempt-1))]."""
    if attempt < 1:
        raise InvalidInputError("attempt must be >= 1")
    if attempt > policy.max_attempts:
        raise AttemptsExhaustedError([f"attempt {attempt} exceeds {policy.max_attempts}"])
    return rng.uniform(0.0, delay_cap(policy, attempt))


@dataclass
class RetryOutcome:
    value: Any
    attempts: int              # attempts spent on the succeeding input
    total_attempts: int        # attempts across all inputs tried
    alternative_index: int     # 0 = primary input, 1 = first alternative, ...
    delays: List[float] = field(default_factory=list)


def with_retry(
    operation: Callable[[Any], Any],
    policy: BackoffPolicy,
    primary: Any = None,
    alternatives: Optional[Sequence[Any]] = None,
    rng: Optional[random.Random] = None,
    sleep: Callable[[float], None] = time.sleep,
) -> RetryOutcome:
    """Run ``operation(input)``, retrying retryable failures with backoff.

    On exhausting the attempt budget for one input, the budget restarts on
    the next alternative input. Non-retryable errors propagate immediately.
    """
    rng = rng or random.Random()
    inputs = [primary] + list(alternatives or [])
    causes: List[BaseException] = []
    total = 0
    for alt_index, arg in enumerate(inputs):
        delays: List[float] = []
        for attempt in range(1, policy.max_attempts + 1):
            total += 1
            try:
                value = operation(arg)
            except RetryableError as exc:
                causes.append(exc)
                if attempt == policy.max_attempts:
                    break
                delay = next_delay(policy, attempt, rng)
                delays.append(delay)
                sleep(delay)
                continue
            return RetryOutcome(
                value=value,
                attempts=attempt,
                total_attempts=total,
                alternative_index=alt_index,
                delays=delays,
            )
    raise AttemptsExhaustedError(causes)
