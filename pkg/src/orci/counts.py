"""The observed 2x2 table of a two-arm binomial experiment."""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError


@dataclass(frozen=True)
class TwoArmCounts:
    """Group sizes and success counts.

    Parameters
    ----------
    n_a, n_b : int
        Sizes of groups A and B.
    x_a, x_b : int
        Number of successes observed in groups A and B.
    """

    n_a: int
    n_b: int
    x_a: int
    x_b: int

    def __post_init__(self):
        for name in ("n_a", "n_b", "x_a", "x_b"):
            value = getattr(self, name)
            if isinstance(value, bool) or int(value) != value:
                raise DomainError(f"{name} must be an integer, got {value!r}")
            object.__setattr__(self, name, int(value))
        if self.n_a < 1 or self.n_b < 1:
            raise DomainError(f"group sizes must be positive, got n_a={self.n_a}, n_b={self.n_b}")
        if not 0 <= self.x_a <= self.n_a:
            raise DomainError(f"x_a={self.x_a} outside [0, {self.n_a}]")
        if not 0 <= self.x_b <= self.n_b:
            raise DomainError(f"x_b={self.x_b} outside [0, {self.n_b}]")

    @property
    def f_a(self) -> int:
        """Failures in group A."""
        return self.n_a - self.x_a

    @property
    def f_b(self) -> int:
        """Failures in group B."""
        return self.n_b - self.x_b

    @property
    def n(self) -> int:
        return self.n_a + self.n_b

    @property
    def successes(self) -> int:
        return self.x_a + self.x_b

    def swapped(self) -> "TwoArmCounts":
        """The same experiment with the roles of A and B exchanged."""
        return TwoArmCounts(self.n_b, self.n_a, self.x_b, self.x_a)
