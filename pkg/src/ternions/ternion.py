"""The ring of upper-triangular 2x2 matrices over GF(q) and its 2x2
matrix ring.

An element [[x, y], [0, z]] is stored as the coordinate triple (x, y, z);
the structural zero is never stored.  Multiplication follows the matrix
product: (x,y,z)*(x',y',z') = (xx', xy'+yz', zz').  A triple is a unit
exactly when x != 0 and z != 0, and the center consists of the scalar
matrices (x, 0, x).

2x2 matrices over this ring act on generator pairs from the right; their
invertibility is decided by the two 2x2 determinant factors of the induced
4x4 matrix over the base field (corner entries and diagonal entries
separately), which is also used to count the unit group.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import product
from typing import Callable, Iterator, Optional, Tuple

from .gf import Field, FieldAutomorphism


@dataclass(frozen=True)
class Ternion:
    """One upper-triangular 2x2 matrix, stored as its coordinate triple."""

    field: Field
    x: int
    y: int
    z: int

    def _check(self, other):
        if not isinstance(other, Ternion):
            return None
        if self.field != other.field:
            raise ValueError("ternions over different fields")
        return other

    def __add__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        f = self.field
        return Ternion(f, f.add(self.x, o.x), f.add(self.y, o.y), f.add(self.z, o.z))

    def __sub__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        f = self.field
        return Ternion(f, f.sub(self.x, o.x), f.sub(self.y, o.y), f.sub(self.z, o.z))

    def __neg__(self):
        f = self.field
        return Ternion(f, f.neg(self.x), f.neg(self.y), f.neg(self.z))

    def __mul__(self, other):
        o = self._check(other)
        if o is None:
            return NotImplemented
        f = self.field
        return Ternion(
            f,
            f.mul(self.x, o.x),
            f.add(f.mul(self.x, o.y), f.mul(self.y, o.z)),
            f.mul(self.z, o.z),
        )

    @property
    def is_unit(self) -> bool:
        return self.x != 0 and self.z != 0

    @property
    def is_zero(self) -> bool:
        return self.x == 0 and self.y == 0 and self.z == 0

    def inverse(self) -> "Ternion":
        """[[x,y],[0,z]]^-1 = [[1/x, -y/(xz)], [0, 1/z]]."""
        if not self.is_unit:
            raise ZeroDivisionError(f"{self} is not a unit")
        f = self.field
        xi, zi = f.inv(self.x), f.inv(self.z)
        return Ternion(f, xi, f.neg(f.mul(f.mul(xi, self.y), zi)), zi)

    def triple(self) -> Tuple[int, int, int]:
        return (self.x, self.y, self.z)

    def matrix_rows(self):
        """The element as a 2x2 coded matrix, structural zero included."""
        return ((self.x, self.y), (0, self.z))

    def __repr__(self):
        return f"T{(self.x, self.y, self.z)}"


def t_zero(field: Field) -> Ternion:
    return Ternion(field, 0, 0, 0)


def t_one(field: Field) -> Ternion:
    return Ternion(field, 1, 0, 1)


def e11(field: Field) -> Ternion:
    return Ternion(field, 1, 0, 0)


def e12(field: Field) -> Ternion:
    return Ternion(field, 0, 1, 0)


def e22(field: Field) -> Ternion:
    return Ternion(field, 0, 0, 1)


def enumerate_ternions(field: Field) -> Iterator[Ternion]:
    """All q^3 elements in lexicographic (x, y, z) code order."""
    for x, y, z in product(field.codes(), repeat=3):
        yield Ternion(field, x, y, z)


def random_ternion(field: Field, rng: random.Random) -> Ternion:
    q = field.q
    return Ternion(field, rng.randrange(q), rng.randrange(q), rng.randrange(q))


def random_unit(field: Field, rng: random.Random) -> Ternion:
    q = field.q
    return Ternion(field, rng.randrange(1, q), rng.randrange(q), rng.randrange(1, q))


# -- ring maps -----------------------------------------------------------------


class RingMap:
    """A unital additive-multiplicative map of the ternion ring.

    ``reverses`` records whether the map reverses products (an
    antiautomorphism) or preserves them (an automorphism).  Composition
    tracks that flag through xor.
    """

    def __init__(self, field: Field, fn: Callable[[Ternion], Ternion], reverses: bool, name: str):
        self.field = field
        self.fn = fn
        self.reverses = reverses
        self.name = name

    def __call__(self, t: Ternion) -> Ternion:
        return self.fn(t)

    def compose(self, other: "RingMap") -> "RingMap":
        """self after other."""
        if self.field != other.field:
            raise ValueError("maps over different fields")
        return RingMap(
            self.field,
            lambda t: self.fn(other.fn(t)),
            self.reverses != other.reverses,
            f"{self.name}*{other.name}",
        )

    def __repr__(self):
        return f"RingMap({self.name})"

    @staticmethod
    def entrywise(sigma: FieldAutomorphism) -> "RingMap":
        """Apply a field automorphism to each coordinate."""
        f = sigma.field
        t_map = sigma.table

        def fn(t: Ternion) -> Ternion:
            return Ternion(f, t_map[t.x], t_map[t.y], t_map[t.z])

        return RingMap(f, fn, False, f"entrywise({sigma!r})")

    @staticmethod
    def inner(u: Ternion) -> "RingMap":
        """Conjugation t -> u t u^-1 by a unit."""
        if not u.is_unit:
            raise ValueError("inner maps require a unit")
        ui = u.inverse()
        return RingMap(u.field, lambda t: u * t * ui, False, f"inner({u!r})")

    @staticmethod
    def iota(field: Field) -> "RingMap":
        """The coordinate-swap antiautomorphism (x, y, z) -> (z, y, x)."""
        return RingMap(field, lambda t: Ternion(field, t.z, t.y, t.x), True, "iota")


def apply_ring_map(m: RingMap, t: Ternion) -> Ternion:
    return m(t)


# -- pairs and 2x2 matrices ------------------------------------------------------

TernionPair = Tuple[Ternion, Ternion]


def pair(a: Ternion, b: Ternion) -> TernionPair:
    if a.field != b.field:
        raise ValueError("pair components over different fields")
    return (a, b)


def scale_left(t: Ternion, v: TernionPair) -> TernionPair:
    """Left scalar action t.(a, b) = (t a, t b) of the span builder."""
    return (t * v[0], t * v[1])


def enumerate_pairs(field: Field) -> Iterator[TernionPair]:
    """All q^6 generator pairs, lexicographic in the six coordinates."""
    for ax, ay, az, bx, by, bz in product(field.codes(), repeat=6):
        yield (Ternion(field, ax, ay, az), Ternion(field, bx, by, bz))


@dataclass(frozen=True)
class TernionMatrix:
    """A 2x2 matrix [[a, b], [c, d]] over the ternion ring."""

    a: Ternion
    b: Ternion
    c: Ternion
    d: Ternion

    def __post_init__(self):
        f = self.a.field
        if not (self.b.field == f and self.c.field == f and self.d.field == f):
            raise ValueError("matrix entries over different fields")

    @property
    def field(self) -> Field:
        return self.a.field

    def __mul__(self, other):
        if not isinstance(other, TernionMatrix):
            return NotImplemented
        a, b, c, d = self.a, self.b, self.c, self.d
        return TernionMatrix(
            a * other.a + b * other.c,
            a * other.b + b * other.d,
            c * other.a + d * other.c,
            c * other.b + d * other.d,
        )

    def det_factors(self) -> Tuple[int, int]:
        """The two determinant factors of the induced 4x4 matrix:
        (a22 d22 - b22 c22, a11 d11 - b11 c11)."""
        f = self.field
        lower = f.sub(f.mul(self.a.z, self.d.z), f.mul(self.b.z, self.c.z))
        upper = f.sub(f.mul(self.a.x, self.d.x), f.mul(self.b.x, self.c.x))
        return (lower, upper)

    @property
    def is_invertible(self) -> bool:
        lower, upper = self.det_factors()
        return lower != 0 and upper != 0

    def det_value(self) -> int:
        """Product of the two determinant factors; equals the 4x4 determinant."""
        lower, upper = self.det_factors()
        return self.field.mul(lower, upper)

    def to_f4_rows(self):
        """The matrix as a 4x4 coded matrix over the base field, each ternion
        block placed literally (structural zeros at (2,1), (2,3), (4,1), (4,3))."""
        a, b, c, d = self.a, self.b, self.c, self.d
        return (
            (a.x, a.y, b.x, b.y),
            (0, a.z, 0, b.z),
            (c.x, c.y, d.x, d.y),
            (0, c.z, 0, d.z),
        )

    def inverse(self) -> "TernionMatrix":
        """Invert through the 4x4 embedding."""
        if not self.is_invertible:
            raise ZeroDivisionError("matrix is not invertible")
        inv4 = self.field.kernel.matinv(self.to_f4_rows())
        assert inv4 is not None
        return from_f4_rows(self.field, inv4)

    def __repr__(self):
        return f"TM[{self.a!r},{self.b!r};{self.c!r},{self.d!r}]"


def from_f4_rows(field: Field, rows) -> TernionMatrix:
    """Rebuild a ternion 2x2 matrix from its 4x4 block form.

    The block positions (2,1), (2,3), (4,1), (4,3) must be zero."""
    if rows[1][0] or rows[1][2] or rows[3][0] or rows[3][2]:
        raise ValueError("rows do not have the block structure")
    return TernionMatrix(
        Ternion(field, rows[0][0], rows[0][1], rows[1][1]),
        Ternion(field, rows[0][2], rows[0][3], rows[1][3]),
        Ternion(field, rows[2][0], rows[2][1], rows[3][1]),
        Ternion(field, rows[2][2], rows[2][3], rows[3][3]),
    )


def matrix_identity(field: Field) -> TernionMatrix:
    return TernionMatrix(t_one(field), t_zero(field), t_zero(field), t_one(field))


def act_right(v: TernionPair, s: TernionMatrix) -> TernionPair:
    """(a, b) . [[a',b'],[c',d']] = (a a' + b c', a b' + b d')."""
    a, b = v
    return (a * s.a + b * s.c, a * s.b + b * s.d)


def enumerate_matrices(field: Field) -> Iterator[TernionMatrix]:
    """All q^12 matrices; only sensible for tiny q."""
    for aa in enumerate_ternions(field):
        for bb in enumerate_ternions(field):
            for cc in enumerate_ternions(field):
                for dd in enumerate_ternions(field):
                    yield TernionMatrix(aa, bb, cc, dd)


def enumerate_invertible(field: Field) -> Iterator[TernionMatrix]:
    """All invertible 2x2 ternion matrices (the lifted collineation group)."""
    for m in enumerate_matrices(field):
        if m.is_invertible:
            yield m


def count_invertible(field: Field) -> int:
    """Exhaustive count of invertible matrices over the raw 12-tuples."""
    f = field
    n = 0
    codes = range(f.q)
    for az, bz, cz, dz in product(codes, repeat=4):
        if f.sub(f.mul(az, dz), f.mul(bz, cz)) == 0:
            continue
        for ax, bx, cx, dx in product(codes, repeat=4):
            if f.sub(f.mul(ax, dx), f.mul(bx, cx)) != 0:
                n += 1
    return n * f.q**4


def invertible_order(field: Field) -> int:
    """Closed form ((q^2-1)(q^2-q))^2 q^4 for the unit group of the matrix ring."""
    q = field.q
    return ((q * q - 1) * (q * q - q)) ** 2 * q**4


def random_invertible(field: Field, rng: random.Random) -> TernionMatrix:
    """Uniform invertible matrix by rejection on the two determinant factors."""
    q = field.q
    while True:
        codes = [rng.randrange(q) for _ in range(12)]
        m = TernionMatrix(
            Ternion(field, *codes[0:3]),
            Ternion(field, *codes[3:6]),
            Ternion(field, *codes[6:9]),
            Ternion(field, *codes[9:12]),
        )
        if m.is_invertible:
            return m
