"""Exact local densities at primes and the global product over them.

Everything except the final float product is an exact rational: unit
densities of matrix groups mod p, local zeta factors from p-power-index
sublattices, the telescoping local identity, and the finite-level
singular-set density.  tamagawa_partial multiplies the exact prime
product into zeta values and is the one float-valued quantity.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import prod

from .dirichlet import riemann_zeta
from .errors import BudgetExceededError, InvariantError, PreconditionError
from .linalg import det_int

_SIEVE_CAP = 1_000_000
_ENUM_BUDGET = 200_000


def is_prime(n):
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


def _require_prime(p):
    if not is_prime(p):
        raise PreconditionError(f"{p} is not prime")


def primes_up_to(n):
    """All primes <= n by a byte sieve; cutoffs beyond 10^6 are rejected."""
    if n > _SIEVE_CAP:
        raise BudgetExceededError(f"prime cutoff capped at {_SIEVE_CAP}")
    if n < 2:
        return []
    flags = bytearray([1]) * (n + 1)
    flags[0] = flags[1] = 0
    for i in range(2, int(n**0.5) + 1):
        if flags[i]:
            flags[i * i :: i] = bytearray(len(flags[i * i :: i]))
    return [i for i in range(2, n + 1) if flags[i]]


@dataclass(frozen=True)
class LocalFactor:
    p: int
    k: int
    value: Fraction

    def __post_init__(self):
        _require_prime(self.p)
        if self.k < 1:
            raise PreconditionError("k must be >= 1")
        if self.value <= 0:
            raise PreconditionError("local factors are positive")


def gl_density(k, p):
    """Density of invertible matrices: (1 - p^-1)(1 - p^-2)...(1 - p^-k)."""
    _require_prime(p)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return prod((1 - Fraction(1, p**j) for j in range(1, k + 1)), start=Fraction(1))


def _iter_matrices(k, q):
    for entries in product(range(q), repeat=k * k):
        yield tuple(entries[i * k : (i + 1) * k] for i in range(k))


def gl_count_modp(k, p, method="formula"):
    """#Gl_k(F_p), by the column-count formula or exhaustive enumeration."""
    _require_prime(p)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if method == "formula":
        return prod(p**k - p**i for i in range(k))
    if method != "enumeration":
        raise PreconditionError(f"unknown method {method!r}")
    if p ** (k * k) > _ENUM_BUDGET:
        raise BudgetExceededError(f"enumeration capped at p^(k^2) <= {_ENUM_BUDGET}")
    return sum(1 for m in _iter_matrices(k, p) if det_int(m) % p != 0)


def sl_count_modp(k, p, method="formula"):
    """#Sl_k(F_p) = #Gl_k(F_p) / (p - 1), with an enumeration cross-check mode."""
    _require_prime(p)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if method == "formula":
        n = gl_count_modp(k, p)
        if n % (p - 1):
            raise InvariantError("unit determinants must split evenly")
        return n // (p - 1)
    if method != "enumeration":
        raise PreconditionError(f"unknown method {method!r}")
    if p ** (k * k) > _ENUM_BUDGET:
        raise BudgetExceededError(f"enumeration capped at p^(k^2) <= {_ENUM_BUDGET}")
    return sum(1 for m in _iter_matrices(k, p) if det_int(m) % p == 1)


def sl_density(k, p):
    """(1 - p^-2)...(1 - p^-k) = #Sl_k(F_p) / p^(k^2 - 1); empty product at k = 1."""
    _require_prime(p)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    return prod((1 - Fraction(1, p**j) for j in range(2, k + 1)), start=Fraction(1))


def local_zeta(k, p, s):
    """Sum of [Z_p^k : J]^(-s) over finite-index J, as an exact rational.

    Equals 1/((1 - p^(k-1-s)) ... (1 - p^(-s))); integer s > k - 1 keeps
    every factor a finite rational.
    """
    _require_prime(p)
    if k < 1:
        raise PreconditionError("k must be >= 1")
    if not isinstance(s, int) or isinstance(s, bool):
        raise PreconditionError("exactness needs integer s")
    if s <= k - 1:
        raise PreconditionError("the product diverges for s <= k - 1")
    v = Fraction(1)
    for j in range(k):
        v /= 1 - Fraction(1, p ** (s - j))
    return v


def local_tamagawa_check(k, p):
    """local_zeta(k, p, k) * gl_density(k, p); anything but 1 is a failure."""
    v = local_zeta(k, p, k) * gl_density(k, p)
    if v != 1:
        raise InvariantError(f"local product at k={k}, p={p} gave {v}, not 1")
    return v


def singular_density(k, p, n):
    """Fraction of k x k matrices over Z/p^n with det divisible by p^n.

    Exhaustive only (there is no formula mode); the value is bounded by
    k * p^(-n).
    """
    _require_prime(p)
    if k < 1 or n < 1:
        raise PreconditionError("k and n must be >= 1")
    q = p**n
    total = q ** (k * k)
    if total > _ENUM_BUDGET:
        raise BudgetExceededError(f"enumeration capped at p^(n k^2) <= {_ENUM_BUDGET}")
    cnt = sum(1 for m in _iter_matrices(k, q) if det_int(m) % q == 0)
    return Fraction(cnt, total)


def index_local_factors(A):
    """Prime factorization {p: p-part} of the index det A.

    Accepts a triangular basis object, a square integer matrix, or the
    index itself; the factors multiply back to the index exactly.
    """
    if isinstance(A, int):
        d = A
    elif hasattr(A, "det"):
        d = A.det
    else:
        d = det_int(tuple(tuple(int(x) for x in row) for row in A))
    if d <= 0:
        raise PreconditionError("index must be positive")
    if d > 10**12:
        raise BudgetExceededError("trial division capped at det <= 10^12")
    out = {}
    m = d
    f = 2
    while f * f <= m:
        if m % f == 0:
            q = 1
            while m % f == 0:
                m //= f
                q *= f
            out[f] = q
        f += 1 if f == 2 else 2
    if m > 1:
        out[m] = m
    if prod(out.values(), start=1) != d:
        raise InvariantError("factor product does not recover the index")
    return out


def _tree_prod(items):
    items = list(items)
    if not items:
        return 1
    while len(items) > 1:
        pairs = [a * b for a, b in zip(items[::2], items[1::2])]
        if len(items) % 2:
            pairs.append(items[-1])
        items = pairs
    return items[0]


def tamagawa_partial(k, P):
    """prod_{j=2..k} zeta(j) * prod_{p <= P} (1 - p^-j); approaches 1 from above.

    The prime product is computed as one exact rational per j before the
    single float conversion, so error comes only from zeta and the final
    products.
    """
    if k < 2:
        raise PreconditionError("k must be >= 2")
    if P < 2:
        raise PreconditionError("P must be >= 2")
    ps = primes_up_to(P)
    value = 1.0
    for j in range(2, k + 1):
        num = _tree_prod([p**j - 1 for p in ps])
        den = _tree_prod([p**j for p in ps])
        value *= riemann_zeta(j) * float(Fraction(num, den))
    return value


def tamagawa_factors_table(k, P):
    """Rows (p, factor, running product) for convergence plots."""
    from .report import Table

    if k < 2:
        raise PreconditionError("k must be >= 2")
    if P < 2:
        raise PreconditionError("P must be >= 2")
    running = 1.0
    for j in range(2, k + 1):
        running *= riemann_zeta(j)
    rows = []
    for p in primes_up_to(P):
        factor = LocalFactor(p, k, sl_density(k, p))
        running *= float(factor.value)
        rows.append((p, factor.value, running))
    return Table("tamagawa", ("p", "factor", "partial_product"), rows, {"k": k})
