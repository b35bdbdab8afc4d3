"""Generators of S(V[2] + V*[1]) for V = theta (degree 1) + g (degree 0).

After the shift the four families of generators carry the degrees

    ===========  =====  ======  ======  ======
    role         g      theta   g*      theta*
    degree       -2     -1      -1      -2
    ===========  =====  ======  ======  ======

and the parity of a generator is its degree mod 2.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from fractions import Fraction
from typing import NamedTuple, Optional, Sequence


class Role(IntEnum):
    # The integer value fixes the global generator order used by monomials:
    # dual variables first, so components print as eps^{pq}_{kl}.
    GSTAR = 0
    THETASTAR = 1
    THETA = 2
    G = 3

    @property
    def degree(self) -> int:
        return _DEGREE[self]

    @property
    def odd(self) -> bool:
        return self.degree % 2 == 1

    @property
    def is_dual(self) -> bool:
        return self in (Role.GSTAR, Role.THETASTAR)

    @property
    def partner(self) -> "Role":
        """The role paired with this one by the duality pairing."""
        return _PARTNER[self]

    @property
    def token(self) -> str:
        return _TOKEN[self]


_DEGREE = {Role.G: -2, Role.THETA: -1, Role.GSTAR: -1, Role.THETASTAR: -2}
_PARTNER = {
    Role.G: Role.GSTAR,
    Role.GSTAR: Role.G,
    Role.THETA: Role.THETASTAR,
    Role.THETASTAR: Role.THETA,
}
_TOKEN = {Role.G: "g", Role.THETA: "t", Role.GSTAR: "gs", Role.THETASTAR: "ts"}
TOKEN_ROLES = {v: k for k, v in _TOKEN.items()}


class Generator(NamedTuple):
    role: Role
    index: int

    @property
    def degree(self) -> int:
        return self.role.degree

    @property
    def odd(self) -> bool:
        return self.role.odd

    @property
    def partner(self) -> "Generator":
        return Generator(self.role.partner, self.index)

    def __str__(self) -> str:
        return f"{self.role.token}{self.index}"

    __repr__ = __str__


@dataclass(frozen=True)
class SpaceSpec:
    """Dimensions (and optional basis labels) of the pair g, theta."""

    dim_g: int
    dim_theta: int
    labels_g: Optional[tuple[str, ...]] = None
    labels_theta: Optional[tuple[str, ...]] = None

    def __post_init__(self):
        if self.dim_g < 0 or self.dim_theta < 0:
            raise ValueError("dimensions must be nonnegative")
        for name, labels, dim in (
            ("g", self.labels_g, self.dim_g),
            ("theta", self.labels_theta, self.dim_theta),
        ):
            if labels is None:
                continue
            if len(labels) != dim:
                raise ValueError(f"{len(labels)} labels given for {name} of dimension {dim}")
            if len(set(labels)) != len(labels):
                raise ValueError(f"basis labels for {name} are not unique")

    def dim(self, role: Role) -> int:
        return self.dim_g if role in (Role.G, Role.GSTAR) else self.dim_theta

    def generators(self, role: Role) -> list[Generator]:
        return [Generator(role, i) for i in range(self.dim(role))]

    def all_generators(self) -> list[Generator]:
        return [gen for role in Role for gen in self.generators(role)]

    def check(self, gen: Generator) -> None:
        if not 0 <= gen.index < self.dim(gen.role):
            raise ValueError(f"generator {gen} out of range for {self}")

    def swapped(self) -> "SpaceSpec":
        """The space seen from the dual side: g <-> theta* and theta <-> g*."""
        return SpaceSpec(self.dim_theta, self.dim_g, self.labels_theta, self.labels_g)

    def same_dims(self, other: "SpaceSpec") -> bool:
        return self.dim_g == other.dim_g and self.dim_theta == other.dim_theta


def degree_of(gen: Generator) -> int:
    return gen.role.degree


def parity(gen: Generator) -> int:
    return gen.role.degree % 2


def pairing(v: Generator, eps: Generator) -> Fraction:
    """Dual-basis pairing <v, eps> of a primal generator with a dual one."""
    if v.role.is_dual:
        raise ValueError(f"{v} is not a generator of g or theta")
    if not eps.role.is_dual:
        raise ValueError(f"{eps} is not a generator of g* or theta*")
    return Fraction(1) if eps == v.partner else Fraction(0)


SWAP_ROLES = {
    Role.G: Role.THETASTAR,
    Role.THETASTAR: Role.G,
    Role.THETA: Role.GSTAR,
    Role.GSTAR: Role.THETA,
}


def swap_generator(gen: Generator) -> Generator:
    return Generator(SWAP_ROLES[gen.role], gen.index)


def gen_list(role: Role, indices: Sequence[int]) -> list[Generator]:
    return [Generator(role, i) for i in indices]
