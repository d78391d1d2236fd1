"""Explicit constructions of indecomposable cycle sets.

The centerpiece is the prime-power family: on X = {0, ..., p^k - 1} with the
standard cycle psi (i -> i+1), choose a strictly decreasing exponent chain
k = j_0 > j_1 > ... > j_n = 0 and digit functions

    f_m : Z/p^{j_m} -> {0, ..., p^{j_{m-1} - j_m} - 1},   f_m(0) = 0,

for m = 1..n-1, and set

    sigma_i = psi ** (1 + sum_m p^{j_m} * f_m(i mod p^{j_m})).

Two conditions make this a cycle set of multipermutation level n with cyclic
permutation group and retraction tower sizes p^{j_0}, ..., p^{j_n}:

* injectivity of each partial-exponent map
  phi_m(l) = 1 + sum_{t >= m} p^{j_t} f_t(l), and
* the symmetry congruence Q(i, j) == Q(j, i)  (mod p^k), where
  K(j, i) = j + 1 + sum_{m >= 2} p^{j_m} f_m(i) and
  Q(j, i) = E(i) + E(K(j, i)) with E the exponent offset above.

The symmetry congruence is exactly the cycle-set axiom for this table, and
every indecomposable cycle set of prime-power size with cyclic permutation
group and level >= 2 arises this way; :func:`extract_spec` recovers the
parameters.

The module also houses the level-1 (trivial shift) family, the direct
two-parameter builder for size p^2, the elementary-abelian construction on
Z/p x Z/p, mixed-radix digit decomposition, and dynamical extensions.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .arith import ilog, is_prime, prime_power
from .cycleset import (
    CycleSet,
    is_indecomposable,
    mpl,
    permutation_group,
    retraction_tower_sizes,
    validate,
)
from .errors import CocycleError, HypothesesError, SpecError, TableError
from .perm import Permutation, is_cyclic


def trivial_cycle_set(m: int) -> CycleSet:
    """The shift table i . j = j + 1 (mod m): indecomposable, level 1."""
    if m < 1:
        raise ValueError("size must be at least 1")
    return CycleSet(tuple(tuple((j + 1) % m for j in range(m)) for _ in range(m)))


def mixed_radix_digits(value: int, p: int, exponents: Sequence[int]) -> tuple[int, ...]:
    """Digits of ``value`` in the mixed radix with place values p^exponents[i].

    ``exponents`` is the full chain (0 = e_0 < e_1 < ... < e_m); the result
    (a_0, ..., a_{m-1}) is the unique vector with

        value == sum_i a_i * p**e_i,    0 <= a_i < p**(e_{i+1} - e_i),

    and ``value`` must lie in [0, p**e_m).
    """
    exps = tuple(exponents)
    if len(exps) < 2 or exps[0] != 0 or any(a >= b for a, b in zip(exps, exps[1:])):
        raise ValueError(f"exponent chain must strictly increase from 0: {exps}")
    top = p ** exps[-1]
    if not 0 <= value < top:
        raise ValueError(f"value {value} out of range 0..{top - 1}")
    return tuple(
        (value // p ** exps[i]) % p ** (exps[i + 1] - exps[i])
        for i in range(len(exps) - 1)
    )


def mixed_radix_value(digits: Sequence[int], p: int, exponents: Sequence[int]) -> int:
    """Inverse of :func:`mixed_radix_digits`; validates digit ranges."""
    exps = tuple(exponents)
    digs = tuple(digits)
    if len(digs) != len(exps) - 1:
        raise ValueError("digit count does not match the exponent chain")
    total = 0
    for i, d in enumerate(digs):
        radix = p ** (exps[i + 1] - exps[i])
        if not 0 <= d < radix:
            raise ValueError(f"digit {d} out of range 0..{radix - 1} at position {i}")
        total += d * p ** exps[i]
    return total


@dataclass(frozen=True)
class CyclicBuildSpec:
    """Parameters of the prime-power construction.

    exponents is the full chain (j_0, ..., j_level) with j_0 = k and
    j_level = 0; digit_functions[m-1] is the lookup table of f_m, of length
    p^{j_m}.  Instances are plain records; :func:`validate_spec` runs the
    full admissibility gauntlet.
    """

    p: int
    k: int
    level: int
    exponents: tuple[int, ...]
    digit_functions: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "exponents", tuple(self.exponents))
        object.__setattr__(
            self, "digit_functions", tuple(tuple(f) for f in self.digit_functions)
        )

    @property
    def size(self) -> int:
        return self.p ** self.k


def _structural_check(spec: CyclicBuildSpec) -> None:
    if not is_prime(spec.p):
        raise SpecError("p must be prime", spec.p)
    if spec.k < 1:
        raise SpecError("k must be at least 1", spec.k)
    if spec.level < 2:
        raise SpecError("level must be at least 2", spec.level)
    exps = spec.exponents
    if len(exps) != spec.level + 1:
        raise SpecError("exponent chain length must be level + 1", exps)
    if exps[0] != spec.k or exps[-1] != 0:
        raise SpecError("exponent chain must run from k down to 0", exps)
    if any(b >= a for a, b in zip(exps, exps[1:])):
        raise SpecError("exponent chain must strictly decrease", exps)
    if len(spec.digit_functions) != spec.level - 1:
        raise SpecError(
            "need level - 1 digit functions", len(spec.digit_functions)
        )
    for m, f in enumerate(spec.digit_functions, start=1):
        dom = spec.p ** exps[m]
        rng = spec.p ** (exps[m - 1] - exps[m])
        if len(f) != dom:
            raise SpecError(f"digit function {m} must have length {dom}", f)
        if f[0] != 0:
            raise SpecError(f"digit function {m} must fix 0", f)
        for v in f:
            if not 0 <= v < rng:
                raise SpecError(
                    f"digit function {m} value out of range 0..{rng - 1}", v
                )


def _offset_terms(spec: CyclicBuildSpec) -> list[tuple[int, tuple[int, ...]]]:
    """(p^{j_m}, f_m table) for m = 1..level-1; f_m is read modulo p^{j_m}."""
    return [
        (spec.p ** spec.exponents[m], spec.digit_functions[m - 1])
        for m in range(1, spec.level)
    ]


def _offset(terms, x: int) -> int:
    return sum(scale * f[x % scale] for scale, f in terms)


def _k_value(terms, j: int, i: int) -> int:
    # the partial offset skips the m = 1 term
    return j + 1 + sum(scale * f[i % scale] for scale, f in terms[1:])


def phi_injectivity_check(
    spec: CyclicBuildSpec,
) -> Optional[tuple[int, int, int]]:
    """None when every partial-exponent map is injective, else a witness.

    The witness (m, l, l') names the first map phi_m and domain pair with
    phi_m(l) == phi_m(l').
    """
    _structural_check(spec)
    terms = _offset_terms(spec)
    for m in range(1, spec.level):
        dom = spec.p ** spec.exponents[m]
        seen: dict[int, int] = {}
        for l in range(dom):
            v = 1 + _offset(terms[m - 1:], l)
            if v in seen:
                return (m, seen[v], l)
            seen[v] = l
    return None


def exponent_symmetry_check(
    spec: CyclicBuildSpec,
) -> Optional[tuple[int, int, int, int]]:
    """None when Q(i, j) == Q(j, i) (mod p^k) for all pairs, else a witness.

    The witness is the first (i, j, Q(i, j) mod p^k, Q(j, i) mod p^k) in
    lexicographic pair order with mismatched values.
    """
    _structural_check(spec)
    size = spec.size
    terms = _offset_terms(spec)
    period = spec.p ** spec.exponents[1]
    etab = [_offset(terms, x) for x in range(period)]

    def q(j: int, i: int) -> int:
        return (etab[i % period] + etab[_k_value(terms, j, i) % period]) % size

    for i in range(size):
        for j in range(i + 1, size):
            qij = q(i, j)
            qji = q(j, i)
            if qij != qji:
                return (i, j, qij, qji)
    return None


def validate_spec(spec: CyclicBuildSpec) -> CyclicBuildSpec:
    """Run all spec invariants, cheapest first, raising with a witness."""
    _structural_check(spec)
    collision = phi_injectivity_check(spec)
    if collision is not None:
        raise SpecError("partial-exponent map not injective", collision)
    asym = exponent_symmetry_check(spec)
    if asym is not None:
        raise SpecError("exponent symmetry congruence fails", asym)
    return spec


def sigma_exponents(spec: CyclicBuildSpec) -> tuple[int, ...]:
    """The exponent 1 + E(i) of the i-th row, for i = 0..p^k-1."""
    _structural_check(spec)
    terms = _offset_terms(spec)
    return tuple(1 + _offset(terms, i) for i in range(spec.size))


def build_prime_power(spec: CyclicBuildSpec, check: bool = True) -> CycleSet:
    """Build the table of the prime-power family member described by ``spec``.

    With ``check`` (the default) the spec is fully validated first; the
    symmetry congruence is equivalent to the cycle-set axiom, so the output
    is always a valid, indecomposable cycle set of level ``spec.level``.
    """
    if check:
        validate_spec(spec)
    else:
        _structural_check(spec)
    size = spec.size
    exps = sigma_exponents(spec)
    return CycleSet(
        tuple(tuple((j + exps[i]) % size for j in range(size)) for i in range(size))
    )


def extract_spec(X: CycleSet) -> CyclicBuildSpec:
    """Recover build parameters from an indecomposable prime-power cycle set.

    Requires cyclic regular permutation group and multipermutation level at
    least 2.  The points are first relabeled so that the base point is 0 and
    its row is the standard cycle; the digit functions are then read off the
    row exponents by mixed-radix decomposition.  The result satisfies
    ``build_prime_power(extract_spec(X))`` isomorphic to X, with equality
    after the same relabeling.
    """
    n = X.n
    pk = prime_power(n)
    if pk is None:
        raise HypothesesError(f"size {n} is not a prime power")
    p, k = pk
    group = permutation_group(X)
    if group.order != n or is_cyclic(group) is None:
        raise HypothesesError("permutation group is not cyclic of full size")
    if not is_indecomposable(X):
        raise HypothesesError("cycle set is not indecomposable")
    level = mpl(X)
    if level is None or level < 2:
        raise HypothesesError("multipermutation level must be at least 2")

    rows = X.rows()
    base = next((x for x in range(n) if rows[x].order() == n), None)
    if base is None:
        raise HypothesesError("no row generates the permutation group")
    phi = rows[base]
    labels = [base]
    for _ in range(n - 1):
        labels.append(phi(labels[-1]))
    pos = {x: i for i, x in enumerate(labels)}
    t = X.table
    relabeled = tuple(
        tuple(pos[t[labels[i]][labels[j]]] for j in range(n)) for i in range(n)
    )
    Y = CycleSet(relabeled)

    sizes = retraction_tower_sizes(Y)
    exps = tuple(ilog(s, p) for s in sizes)
    shifts = [relabeled[i][0] for i in range(n)]
    for i in range(n):
        if any(relabeled[i][j] != (j + shifts[i]) % n for j in range(n)):
            raise HypothesesError("rows are not powers of the standard cycle")
        if shifts[i] == 0:
            raise HypothesesError(f"row {i} does not generate the group")

    chain = tuple(reversed(exps))  # (0, j_{level-1}, ..., j_0 = k)
    tables: list[list[Optional[int]]] = [
        [None] * (p ** exps[m]) for m in range(1, level)
    ]
    for i in range(n):
        digits = mixed_radix_digits(shifts[i] - 1, p, chain)
        if digits[0] != 0:
            raise HypothesesError(f"row exponent {shifts[i]} has a stray low digit")
        for m in range(1, level):
            d = digits[level - m]
            r = i % (p ** exps[m])
            if tables[m - 1][r] is None:
                tables[m - 1][r] = d
            elif tables[m - 1][r] != d:
                raise HypothesesError(
                    f"digit function {m} is not well defined at residue {r}"
                )
    spec = CyclicBuildSpec(
        p=p,
        k=k,
        level=level,
        exponents=exps,
        digit_functions=tuple(tuple(ft) for ft in tables),  # type: ignore[arg-type]
    )
    return validate_spec(spec)


def compatible_bijections(p: int) -> list[tuple[int, ...]]:
    """Bijections f of Z/p with f(0) = 0 and constant successive difference.

    These are exactly the admissible digit functions of the two-level size
    p^2 family: the condition f(i+1) + f(j) == f(i) + f(j+1)  (mod p) forces
    f(k) = k*t mod p for a unit t, and every such map qualifies.  The p - 1
    tables are returned in increasing order of t.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    return [tuple(k * t % p for k in range(p)) for t in range(1, p)]


def build_p2_level2(p: int, t: int) -> CycleSet:
    """The size-p^2, level-2 member with digit function f(k) = k*t mod p.

    Indecomposable, multipermutation level 2, cyclic permutation group of
    order p^2; two values of t give non-isomorphic tables.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if not 1 <= t <= p - 1:
        raise ValueError(f"t must lie in 1..{p - 1}")
    n = p * p
    return CycleSet(
        tuple(
            tuple((j + 1 + p * ((i % p) * t % p)) % n for j in range(n))
            for i in range(n)
        )
    )


def build_elementary_abelian(p: int, alpha: Optional[Permutation] = None) -> CycleSet:
    """The cycle set (a, i) . (b, j) = (b + 1, alpha^a(j)) on Z/p x Z/p.

    ``alpha`` must be a single p-cycle (default: the standard cycle); the
    isomorphism class does not depend on the choice.  Pairs are flattened as
    (a, i) -> a*p + i.  The permutation group is elementary abelian of order
    p^2 and the level is 2.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if alpha is None:
        alpha = Permutation.cycle(p)
    if alpha.degree != p or alpha.cycle_type() != (p,):
        raise ValueError(f"alpha must be a single {p}-cycle")
    powers = [alpha.power(a) for a in range(p)]
    n = p * p
    table = [[0] * n for _ in range(n)]
    for a in range(p):
        for i in range(p):
            row = table[a * p + i]
            for b in range(p):
                for j in range(p):
                    row[b * p + j] = ((b + 1) % p) * p + powers[a](j)
    return CycleSet(table)


@dataclass(frozen=True)
class DynamicalCocycle:
    """A family alpha[i][j][s] of fiber permutations over a base cycle set.

    alpha[i][j][s] is the image tuple of the permutation alpha_(i,j)(s, -) of
    the fiber {0, ..., fiber-1}.  Construction checks shapes and that every
    alpha[i][j][s] is a bijection; the compatibility condition is checked by
    :func:`validate_cocycle`.
    """

    base: CycleSet
    fiber: int
    alpha: tuple[tuple[tuple[tuple[int, ...], ...], ...], ...]

    def __post_init__(self):
        object.__setattr__(
            self,
            "alpha",
            tuple(
                tuple(tuple(tuple(img) for img in per_s) for per_s in per_j)
                for per_j in self.alpha
            ),
        )
        m = self.base.n
        if self.fiber < 1:
            raise TableError("fiber size must be at least 1")
        if len(self.alpha) != m or any(len(per_j) != m for per_j in self.alpha):
            raise TableError("alpha must be indexed by base x base")
        for i in range(m):
            for j in range(m):
                block = self.alpha[i][j]
                if len(block) != self.fiber:
                    raise TableError(f"alpha[{i}][{j}] must have one row per fiber point")
                for s, img in enumerate(block):
                    if len(img) != self.fiber or sorted(img) != list(range(self.fiber)):
                        raise TableError(
                            f"alpha[{i}][{j}][{s}] is not a permutation of the fiber"
                        )


def validate_cocycle(
    c: DynamicalCocycle,
) -> Optional[tuple[int, int, int, int, int, int]]:
    """None when the cocycle condition holds, else the first witness.

    The condition, for all base points i, j, k and fiber points r, s, t:

        alpha[i.j][i.k][ alpha[i][j][r][s] ][ alpha[i][k][r][t] ]
     == alpha[j.i][j.k][ alpha[j][i][s][r] ][ alpha[j][k][s][t] ]
    """
    t = c.base.table
    a = c.alpha
    m, fib = c.base.n, c.fiber
    for i in range(m):
        for j in range(m):
            for k in range(m):
                left = a[t[i][j]][t[i][k]]
                right = a[t[j][i]][t[j][k]]
                aij, aik = a[i][j], a[i][k]
                aji, ajk = a[j][i], a[j][k]
                for r in range(fib):
                    for s in range(fib):
                        lrow = left[aij[r][s]]
                        rrow = right[aji[s][r]]
                        for tt in range(fib):
                            if lrow[aik[r][tt]] != rrow[ajk[s][tt]]:
                                return (i, j, k, r, s, tt)
    return None


def dynamical_extension(c: DynamicalCocycle) -> CycleSet:
    """The extension (s, i) . (t, j) = (alpha[i][j][s][t], i . j) on fiber x base.

    Points are flattened as (s, i) -> s * |base| + i.  The base must validate
    as a cycle set and the cocycle condition must hold; the output is checked
    before being returned.
    """
    witness = validate_cocycle(c)
    if witness is not None:
        raise CocycleError(witness)
    m, fib = c.base.n, c.fiber
    t = c.base.table
    a = c.alpha
    n = m * fib
    table = [[0] * n for _ in range(n)]
    for s in range(fib):
        for i in range(m):
            row = table[s * m + i]
            for tt in range(fib):
                for j in range(m):
                    row[tt * m + j] = a[i][j][s][tt] * m + t[i][j]
    return validate(table)
