from __future__ import annotations

import math
from dataclasses import dataclass

DEFAULT_CAPTURE = (1, 100)
DEFAULT_THROW = (1000, 3000)

_TRUE = {"1", "true", "t", "yes", "y", "on"}
_FALSE = {"0", "false", "f", "no", "n", "off"}


def to_bool(v: bool | str) -> bool:
    if isinstance(v, bool):
        return v
    if isinstance(v, str):
        s = v.strip().lower()
        if s in _TRUE:
            return True
        if s in _FALSE:
            return False
    raise ValueError(f"Expected a boolean or boolean-string, got {v!r}")


def parse_interval(v: str | tuple[int, int]) -> tuple[int, int]:
    """
    Accepts "[a,b]", "a,b" or "a-b" (inclusive bounds).
    """
    if isinstance(v, tuple):
        return int(v[0]), int(v[1])
    s = v.strip().strip("[]()")
    sep = "," if "," in s else "-"
    parts = [p.strip() for p in s.split(sep)]
    if len(parts) != 2 or not all(p.isdigit() for p in parts):
        raise ValueError(f"Expected a generation interval like [1,100], got {v!r}")
    return int(parts[0]), int(parts[1])


def format_interval(interval: tuple[int, int]) -> str:
    return f"{interval[0]}-{interval[1]}"


@dataclass(frozen=True, slots=True)
class NeotenyConfig:
    """
    When to capture elite genotypes and when to throw them back in.
    Both windows are inclusive generation intervals.
    """
    capture: tuple[int, int] = DEFAULT_CAPTURE
    throw: tuple[int, int] = DEFAULT_THROW
    e: float = 1.0
    with_random_companion: bool = False
    protect_best: bool = False

    def validate(self) -> None:
        c0, c1 = self.capture
        t0, t1 = self.throw
        if c0 < 0 or t0 < 0:
            raise ValueError("NeotenyConfig windows must start at generation >= 0.")
        if c0 > c1:
            raise ValueError(f"NeotenyConfig.capture is empty: {self.capture}")
        if t0 > t1:
            raise ValueError(f"NeotenyConfig.throw is empty: {self.throw}")
        if c1 >= t0:
            raise ValueError(
                f"NeotenyConfig.capture {list(self.capture)} must end before throw {list(self.throw)} starts."
            )
        if not math.isfinite(self.e) or self.e < 0:
            raise ValueError("NeotenyConfig.e must be a finite number >= 0.")
        if not isinstance(self.with_random_companion, bool):
            raise ValueError("NeotenyConfig.with_random_companion must be a boolean.")
        if not isinstance(self.protect_best, bool):
            raise ValueError("NeotenyConfig.protect_best must be a boolean.")

    @property
    def archive_capacity(self) -> int:
        return self.capture[1] - self.capture[0] + 1

    def in_capture(self, g: int) -> bool:
        return self.capture[0] <= g <= self.capture[1]

    def in_throw(self, g: int) -> bool:
        return self.throw[0] <= g <= self.throw[1]

    def describe_e(self) -> str:
        """Column E as printed in summaries; '+R' marks a random companion per injection."""
        text = f"{self.e:g}"
        return f"{text}+R" if self.with_random_companion else text

    def scaled(self, factor: float) -> "NeotenyConfig":
        """
        Scale both windows by `factor`, keeping them non-empty and disjoint.
        """
        def _s(v: int) -> int:
            return max(0, int(round(v * factor)))

        c0, c1 = _s(self.capture[0]), _s(self.capture[1])
        c1 = max(c0, c1)
        t0 = max(c1 + 1, _s(self.throw[0]))
        t1 = max(t0, _s(self.throw[1]))
        cfg = NeotenyConfig(
            capture=(c0, c1),
            throw=(t0, t1),
            e=self.e,
            with_random_companion=self.with_random_companion,
            protect_best=self.protect_best,
        )
        cfg.validate()
        return cfg

    @staticmethod
    def from_strings(
        capture: str | tuple[int, int] = DEFAULT_CAPTURE,
        throw: str | tuple[int, int] = DEFAULT_THROW,
        e: str | float = 1.0,
        with_random_companion: bool | str = False,
        protect_best: bool | str = False,
    ) -> "NeotenyConfig":
        cfg = NeotenyConfig(
            capture=parse_interval(capture),
            throw=parse_interval(throw),
            e=float(e),
            with_random_companion=to_bool(with_random_companion),
            protect_best=to_bool(protect_best),
        )
        cfg.validate()
        return cfg
