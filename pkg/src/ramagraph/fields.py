"""Exact arithmetic over F_q and its quadratic extension F_{q^2}.

Primes are plain ints, validated by trial division wherever they enter.
Everything in this module is integer arithmetic; no floating point, no
randomness, and fixed tie-breaking so results are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple


def is_prime(n: int) -> bool:
    """Deterministic trial-division primality test (fine at desk scale)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def require_odd_prime(q: int) -> None:
    if not is_prime(q):
        raise ValueError(f"modulus {q} is not prime")
    if q == 2:
        raise ValueError("modulus must be an odd prime, got 2")


def legendre_symbol(a: int, q: int) -> int:
    """Legendre symbol (a/q) by Euler's criterion.

    Args:
        a: integer not divisible by q.
        q: odd prime.

    Returns:
        +1 if a is a quadratic residue mod q, -1 otherwise.

    Raises:
        ValueError: if q is not an odd prime or a is divisible by q.
    """
    require_odd_prime(q)
    a %= q
    if a == 0:
        raise ValueError(f"legendre symbol undefined: a divisible by {q}")
    return 1 if pow(a, (q - 1) // 2, q) == 1 else -1


def residue_partition(q: int) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Split 1..q-1 into quadratic residues and nonresidues, each sorted.

    Both classes have exactly (q-1)/2 elements.
    """
    require_odd_prime(q)
    squares = {pow(x, 2, q) for x in range(1, q)}
    plus = tuple(sorted(squares))
    minus = tuple(x for x in range(1, q) if x not in squares)
    return plus, minus


def sqrt_minus_one(q: int) -> int:
    """The smallest positive i with i*i = -1 mod q; needs q = 1 (mod 4).

    Computed as u^((q-1)/4) for the smallest nonresidue u, then reduced to
    the smaller of the two roots.
    """
    require_odd_prime(q)
    if q % 4 != 1:
        raise ValueError(f"-1 is not a square mod {q} (q = 3 mod 4)")
    u = next(x for x in range(2, q) if legendre_symbol(x, q) == -1)
    i = pow(u, (q - 1) // 4, q)
    i = min(i, q - i)
    if (i * i) % q != q - 1:
        raise AssertionError("square root of -1 failed its defining identity")
    return i


class ExtElement(NamedTuple):
    """The element a*xbar + b of F_q[x]/(x^2 + c), coefficients reduced mod q."""

    a: int
    b: int


@dataclass(frozen=True)
class QuadExtension:
    """F_{q^2} realized as F_q[x]/(x^2 + c) for an irreducible x^2 + c.

    Irreducibility of x^2 + c over F_q is exactly "-c is a nonresidue",
    which the constructor re-checks by exhausting all squares mod q.
    """

    q: int
    c: int

    def __post_init__(self) -> None:
        require_odd_prime(self.q)
        if not 0 < self.c < self.q:
            raise ValueError(f"irreducibility constant {self.c} out of range for q={self.q}")
        squares = {pow(x, 2, self.q) for x in range(self.q)}
        if (-self.c) % self.q in squares:
            raise ValueError(f"x^2 + {self.c} has a root mod {self.q}; extension is not a field")

    @property
    def zero(self) -> ExtElement:
        return ExtElement(0, 0)

    @property
    def one(self) -> ExtElement:
        return ExtElement(0, 1)

    def element(self, a: int, b: int) -> ExtElement:
        return ExtElement(a % self.q, b % self.q)

    def add(self, u: ExtElement, v: ExtElement) -> ExtElement:
        return ExtElement((u.a + v.a) % self.q, (u.b + v.b) % self.q)

    def neg(self, u: ExtElement) -> ExtElement:
        return ExtElement(-u.a % self.q, -u.b % self.q)

    def mul(self, u: ExtElement, v: ExtElement) -> ExtElement:
        # (a1 x + b1)(a2 x + b2) with x^2 = -c
        a = (u.a * v.b + u.b * v.a) % self.q
        b = (u.b * v.b - self.c * u.a * v.a) % self.q
        return ExtElement(a, b)

    def pow(self, u: ExtElement, e: int) -> ExtElement:
        """Square-and-multiply power; e >= 0."""
        if e < 0:
            raise ValueError("negative exponents unsupported; invert first")
        acc = self.one
        base = u
        while e:
            if e & 1:
                acc = self.mul(acc, base)
            base = self.mul(base, base)
            e >>= 1
        return acc

    def inverse(self, u: ExtElement) -> ExtElement:
        if u == self.zero:
            raise ZeroDivisionError("zero has no inverse")
        return self.pow(u, self.q * self.q - 2)

    def norm(self, u: ExtElement) -> int:
        """The norm u^(q+1), landing in the base field; returned as an int."""
        w = self.pow(u, self.q + 1)
        if w.a != 0:
            raise AssertionError(f"norm of {u} is not scalar; arithmetic is broken")
        return w.b

    def all_elements(self) -> list[ExtElement]:
        return [ExtElement(a, b) for a in range(self.q) for b in range(self.q)]


def find_irreducible_quadratic(q: int) -> QuadExtension:
    """Smallest c >= 1 making x^2 + c irreducible over F_q.

    For q = 5 (mod 8) the answer is always c = 2, checked and used as a
    shortcut; otherwise c is found by ascending scan.
    """
    require_odd_prime(q)
    if q % 8 == 5:
        ext = QuadExtension(q, 2)
        return ext
    for c in range(1, q):
        if legendre_symbol(-c, q) == -1:
            return QuadExtension(q, c)
    raise AssertionError(f"no irreducible quadratic x^2 + c over F_{q}; impossible for odd prime")


def _prime_divisors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1
    if n > 1:
        out.append(n)
    return out


def find_primitive_element(ext: QuadExtension, cap: int = 101) -> ExtElement:
    """A generator of the multiplicative group of F_{q^2}.

    Candidates g are tested by checking g^((q^2-1)/l) != 1 for every prime
    divisor l of q^2 - 1. The scan runs b ascending then a ascending (so the
    constant terms are exhausted last within each b), skipping zero, which
    pins the returned element.

    Args:
        ext: the quadratic extension to search.
        cap: largest q the brute-force scan accepts.

    Raises:
        ValueError: q above the configured cap.
        AssertionError: scan exhausted, which would mean broken arithmetic.
    """
    q = ext.q
    if q > cap:
        raise ValueError(f"primitive-element search capped at q <= {cap}, got {q}")
    order = q * q - 1
    divisors = _prime_divisors(order)
    for b in range(q):
        for a in range(q):
            if a == 0 and b == 0:
                continue
            g = ExtElement(a, b)
            if all(ext.pow(g, order // l) != ext.one for l in divisors):
                return g
    raise AssertionError("no primitive element found; field arithmetic is broken")


def norm_one_units(ext: QuadExtension, cap: int = 101) -> list[ExtElement]:
    """The q+1 elements of norm one, sorted by (a, b).

    Computed as the powers beta^(k(q-1)) of a primitive element beta and
    cross-checked against the brute-force filter {u : u^(q+1) = 1}; any
    disagreement is an internal error.
    """
    q = ext.q
    beta = find_primitive_element(ext, cap=cap)
    step = ext.pow(beta, q - 1)
    via_powers = set()
    u = step
    for _ in range(q + 1):
        via_powers.add(u)
        u = ext.mul(u, step)
    via_filter = {
        w for w in ext.all_elements()
        if w != ext.zero and ext.pow(w, q + 1) == ext.one
    }
    if via_powers != via_filter:
        raise AssertionError("norm-one subgroup mismatch between power and filter enumerations")
    if len(via_powers) != q + 1:
        raise AssertionError(f"expected {q + 1} norm-one units, found {len(via_powers)}")
    return sorted(via_powers)
