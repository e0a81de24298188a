from __future__ import annotations

import enum
from dataclasses import dataclass, replace

DEFAULT_P0 = 0.15
DEFAULT_SWITCH_G = 100
BACK_P0 = 0.5


class ScheduleKind(str, enum.Enum):
    CONSTANT = "C"
    LINEAR = "LD"
    QUADRATIC = "QD"
    BACK = "BACK"

    @staticmethod
    def parse(value: "str | ScheduleKind") -> "ScheduleKind":
        if isinstance(value, ScheduleKind):
            return value
        s = value.strip().upper()
        if s == "B":
            return ScheduleKind.BACK
        try:
            return ScheduleKind(s)
        except ValueError:
            raise ValueError(f"Unknown mutation schedule {value!r}; expected C, LD, QD or BACK") from None


@dataclass(frozen=True, slots=True)
class MutationSchedule:
    """
    Per-generation bit-flip probability.

    C:    p0
    LD:   p0 at g=0, p0/g on [1, switch_g], p0/switch_g afterwards
    QD:   p0 at g=0, p0/g**2 on [1, switch_g], p0/switch_g**2 afterwards
    BACK: hyperbolic 1/(a + b*g) with a = 1/p0 and b chosen so that rate(T-1) = 1/n

    For BACK, `n` and `t_max` may be left as None and filled in later with
    `resolved` once the chromosome length and run length are known.
    """
    kind: ScheduleKind
    p0: float = DEFAULT_P0
    switch_g: int = DEFAULT_SWITCH_G
    n: int | None = None
    t_max: int | None = None

    @property
    def floor_rate(self) -> float:
        if self.kind is ScheduleKind.LINEAR:
            return self.p0 / self.switch_g
        if self.kind is ScheduleKind.QUADRATIC:
            return self.p0 / (self.switch_g * self.switch_g)
        if self.kind is ScheduleKind.BACK and self.n:
            return 1.0 / self.n
        return self.p0

    @property
    def is_resolved(self) -> bool:
        return self.kind is not ScheduleKind.BACK or (self.n is not None and self.t_max is not None)

    @property
    def label(self) -> str:
        if self.kind is ScheduleKind.BACK:
            return f"B[{self.p0:.2f}]"
        return self.kind.value

    def resolved(self, n: int, t_max: int) -> "MutationSchedule":
        if self.kind is not ScheduleKind.BACK:
            return self
        return replace(
            self,
            n=self.n if self.n is not None else n,
            t_max=self.t_max if self.t_max is not None else t_max,
        )

    def rate(self, g: int) -> float:
        if g < 0:
            raise ValueError(f"Generation index must be >= 0, got {g}.")
        if self.p0 <= 0:
            raise ValueError("MutationSchedule.p0 must be > 0.")

        if self.kind is ScheduleKind.CONSTANT:
            return self.p0
        if self.kind in (ScheduleKind.LINEAR, ScheduleKind.QUADRATIC):
            if g == 0:
                return self.p0
            if g >= self.switch_g:
                return self.floor_rate
            return self.p0 / g if self.kind is ScheduleKind.LINEAR else self.p0 / (g * g)
        return self._back_rate(g)

    def _back_rate(self, g: int) -> float:
        if self.n is None or self.t_max is None:
            raise ValueError("BACK schedule needs n and t_max; call resolved() first.")
        if g >= self.t_max:
            raise ValueError(f"BACK schedule is defined for g < T={self.t_max}, got {g}.")
        if g == self.t_max - 1:
            # Endpoint condition the hyperbola is fitted to.
            return 1.0 / self.n
        a = 1.0 / self.p0
        return 1.0 / (a + (self.n - a) * g / (self.t_max - 1))

    def curve(self, g_max: int) -> list[float]:
        """Rates for g = 0..g_max inclusive."""
        return [self.rate(g) for g in range(g_max + 1)]

    def validate(self) -> None:
        if not isinstance(self.kind, ScheduleKind):
            raise ValueError("MutationSchedule.kind must be a ScheduleKind.")
        if not (0 < self.p0 <= 1):
            raise ValueError("MutationSchedule.p0 must be in (0, 1].")
        if isinstance(self.switch_g, bool) or not isinstance(self.switch_g, int) or self.switch_g < 1:
            raise ValueError("MutationSchedule.switch_g must be an integer >= 1.")
        if self.kind is not ScheduleKind.BACK:
            return

        if self.n is not None and self.n < 1:
            raise ValueError("MutationSchedule.n must be >= 1.")
        if self.t_max is not None and self.t_max < 1:
            raise ValueError("MutationSchedule.t_max must be >= 1.")
        if self.n is not None and 1.0 / self.p0 > self.n:
            raise ValueError(
                f"BACK schedule needs 1/p0 <= n (got 1/p0={1.0 / self.p0:.6g}, n={self.n}); "
                "otherwise the rate would increase over time."
            )

    @staticmethod
    def from_strings(
        kind: str | ScheduleKind,
        p0: str | float | None = None,
        switch_g: str | int = DEFAULT_SWITCH_G,
        n: str | int | None = None,
        t_max: str | int | None = None,
    ) -> "MutationSchedule":
        def _opt_int(v: str | int | None) -> int | None:
            if v is None:
                return None
            if isinstance(v, str) and v.strip().lower() in {"", "auto"}:
                return None
            return int(v)

        parsed = ScheduleKind.parse(kind)
        if p0 is None or (isinstance(p0, str) and not p0.strip()):
            p0_value = DEFAULT_P0
        else:
            p0_value = float(p0)
        schedule = MutationSchedule(
            kind=parsed,
            p0=p0_value,
            switch_g=int(switch_g),
            n=_opt_int(n),
            t_max=_opt_int(t_max),
        )
        schedule.validate()
        return schedule
