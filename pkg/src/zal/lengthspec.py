"""Primitive geodesic length spectra of the modular group and congruence subgroups.

The primitive length spectrum of the modular surface is enumerated
through the classical dictionary between hyperbolic conjugacy classes of
trace t and cycles of Gauss-reduced indefinite binary quadratic forms of
discriminant t^2 - 4.  Two traps are handled explicitly:

* imprimitive forms (content u > 1) correspond to classes whose
  primitive part lives at discriminant (t^2-4)/u^2, and such a class is
  a *primitive group element* only when (t, u) is the fundamental
  solution of X^2 - d0 Y^2 = 4 for d0 = (t^2-4)/u^2; otherwise the class
  is a proper power and must not be counted;
* equivalence of forms is proper (SL2) equivalence, i.e. cycles, not
  ambiguous GL2 classes.

The convention is the standard one: primitive *oriented* closed
geodesics, equivalently conjugacy classes of primitive hyperbolic
elements; length = 2 arccosh(t/2).

Subgroup spectra are produced by covering-space lifting: a primitive
ambient class with representative M acts on the coset space of the
subgroup, and each orbit of size k contributes one primitive class of
length k * l(M).  The enumeration is complete for all subgroup classes
of trace <= max_trace because lifted traces only grow.

Everything here is exact integer arithmetic except the final lengths.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from enum import Enum
from math import gcd, isqrt
from typing import Iterable, Iterator

__all__ = [
    "GroupKind",
    "GroupSpec",
    "GeodesicClass",
    "LengthSpectrum",
    "group_invariants",
    "class_number_indefinite",
    "modular_spectrum",
    "subgroup_spectrum",
    "subgroup_class_representatives",
    "ambient_classes",
    "trace_of_power",
    "spectrum_to_csv",
]

Mat = tuple[int, int, int, int]  # row-major 2x2 integer matrix
Form = tuple[int, int, int]      # (a, b, c) <-> a x^2 + b xy + c y^2

M_ID: Mat = (1, 0, 0, 1)


class GroupKind(Enum):
    FULL = "full"
    PRINCIPAL2 = "gamma2"
    GAMMA0 = "gamma0"
    GAMMA1 = "gamma1"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class GroupSpec:
    kind: GroupKind
    p: int | None = None

    def __post_init__(self) -> None:
        if self.kind in (GroupKind.GAMMA0, GroupKind.GAMMA1):
            if self.p is None or not _is_prime(self.p) or self.p < 11:
                raise ValueError(f"{self.kind.value} needs a prime level p >= 11")
        elif self.p is not None:
            raise ValueError(f"{self.kind.value} takes no level")

    @classmethod
    def full(cls) -> "GroupSpec":
        return cls(GroupKind.FULL)

    @classmethod
    def principal2(cls) -> "GroupSpec":
        return cls(GroupKind.PRINCIPAL2)

    @classmethod
    def gamma0(cls, p: int) -> "GroupSpec":
        return cls(GroupKind.GAMMA0, p)

    @classmethod
    def gamma1(cls, p: int) -> "GroupSpec":
        return cls(GroupKind.GAMMA1, p)

    @property
    def torsion_free(self) -> bool:
        """True when the image in PSL2(Z) has no elliptic elements."""
        if self.kind == GroupKind.FULL:
            return False
        if self.kind == GroupKind.PRINCIPAL2:
            return True
        if self.kind == GroupKind.GAMMA1:
            return True  # p >= 11 enforced above
        return self.p % 12 == 11  # nu2 = nu3 = 0 exactly then

    def exponents_admissible(self) -> bool:
        """Hypotheses under which the exponent-ledger pipeline applies."""
        if self.kind == GroupKind.PRINCIPAL2:
            return True
        if self.kind == GroupKind.GAMMA1:
            return True
        if self.kind == GroupKind.GAMMA0:
            return self.p % 12 == 11
        return False

    def label(self) -> str:
        if self.p is not None:
            return f"{self.kind.value}({self.p})"
        return self.kind.value


def group_invariants(spec: GroupSpec) -> tuple[int, int, int]:
    """(genus, cusps, index of the image in PSL2(Z)).

    The full group is the degree-1 ambient orbifold (g=0, n=1, m=1); it
    is not a stable surface type and is only used as a covering base.
    """
    if spec.kind == GroupKind.FULL:
        return 0, 1, 1
    if spec.kind == GroupKind.PRINCIPAL2:
        return 0, 3, 6
    p = spec.p
    assert p is not None
    if spec.kind == GroupKind.GAMMA0:
        m = p + 1
        nu2 = 1 + (1 if p % 4 == 1 else -1)
        nu3 = 1 + (1 if p % 3 == 1 else -1)
        num = m - 3 * nu2 - 4 * nu3 - 6 * 2 + 12
        if num % 12:
            raise ValueError("genus formula did not give an integer")
        return num // 12, 2, m
    # GAMMA1, p >= 11: no torsion, cusps p-1, PSL2 index (p^2-1)/2
    m = (p * p - 1) // 2
    n = p - 1
    num = 12 + m - 6 * n
    if num % 12:
        raise ValueError("genus formula did not give an integer")
    return num // 12, n, m


# ---------------------------------------------------------------------------
# indefinite binary quadratic forms


def is_discriminant(D: int) -> bool:
    return D > 0 and D % 4 in (0, 1) and isqrt(D) ** 2 != D


def is_reduced(form: Form, D: int) -> bool:
    """Gauss-reduced: |sqrt(D) - 2|a|| < b < sqrt(D), exact integer test."""
    a, b, c = form
    if b <= 0 or b * b >= D:
        return False
    ta = 2 * abs(a)
    if (ta + b) ** 2 <= D:
        return False
    if ta > b and (ta - b) ** 2 >= D:
        return False
    return True


def reduced_forms(D: int) -> list[Form]:
    """All Gauss-reduced forms of discriminant D (any content)."""
    if not is_discriminant(D):
        raise ValueError(f"{D} is not a positive non-square discriminant")
    out: list[Form] = []
    r = isqrt(D)
    for b in range(1, r + 1):
        if (D - b * b) % 4:
            continue
        ac = (b * b - D) // 4  # negative
        m = -ac
        for a in _signed_divisors(m):
            c = ac // a
            if is_reduced((a, b, c), D):
                out.append((a, b, c))
    return out


def _signed_divisors(m: int) -> Iterator[int]:
    for d in range(1, isqrt(m) + 1):
        if m % d == 0:
            yield d
            yield -d
            e = m // d
            if e != d:
                yield e
                yield -e


def rho_step(form: Form, D: int) -> Form:
    """Right neighbor in the reduction cycle (preserves reducedness)."""
    a, b, c = form
    tc = 2 * abs(c)
    r = isqrt(D)  # floor(sqrt(D)); b' < sqrt(D) means b' <= r
    b2 = -b % tc
    b2 += ((r - b2) // tc) * tc  # largest value <= r in the class
    c2 = (b2 * b2 - D) // (4 * c)
    return (c, b2, c2)


def form_cycles(forms: Iterable[Form], D: int) -> list[list[Form]]:
    """Partition reduced forms into rho-cycles."""
    remaining = set(forms)
    cycles: list[list[Form]] = []
    while remaining:
        start = min(remaining)
        cyc = [start]
        remaining.discard(start)
        cur = rho_step(start, D)
        while cur != start:
            if cur not in remaining:
                raise RuntimeError(f"rho walk left the reduced set at D={D}")
            remaining.discard(cur)
            cyc.append(cur)
            cur = rho_step(cur, D)
        cycles.append(cyc)
    return cycles


def class_number_indefinite(D: int) -> int:
    """Number of reduction cycles of discriminant D, all contents included."""
    return len(form_cycles(reduced_forms(D), D))


def _primitive_cycle_reps(D: int) -> list[Form]:
    """One reduced representative per cycle of *primitive* forms of disc D."""
    prim = [f for f in reduced_forms(D) if gcd(gcd(f[0], f[1]), f[2]) == 1]
    return [cyc[0] for cyc in form_cycles(prim, D)]


def pell_fundamental(d0: int) -> tuple[int, int]:
    """Fundamental solution (T, U), T, U > 0, of T^2 - d0 U^2 = 4."""
    if not is_discriminant(d0):
        raise ValueError(f"{d0} is not a valid discriminant")
    u = 1
    while True:
        t2 = d0 * u * u + 4
        t = isqrt(t2)
        if t * t == t2:
            return t, u
        u += 1


# ---------------------------------------------------------------------------
# conjugacy classes of the modular group


def form_of_matrix(M: Mat) -> Form:
    """Fixed-point form (c, d-a, -b) of a hyperbolic matrix [[a,b],[c,d]]."""
    a, b, c, d = M
    return (c, d - a, -b)


def matrix_of_form(form: Form, t: int) -> Mat:
    """The trace-t automorph [[ (t-b)/2, -c ], [ a, (t+b)/2 ]] of (a,b,c)."""
    a, b, c = form
    if (t - b) % 2:
        raise ValueError("trace/parity mismatch")
    return ((t - b) // 2, -c, a, (t + b) // 2)


def mat_mul(x: Mat, y: Mat) -> Mat:
    return (x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3],
            x[2] * y[0] + x[3] * y[2], x[2] * y[1] + x[3] * y[3])


def mat_inv(x: Mat) -> Mat:
    a, b, c, d = x
    if a * d - b * c != 1:
        raise ValueError("not unimodular")
    return (d, -b, -c, a)


def mat_pow(x: Mat, k: int) -> Mat:
    out = M_ID
    base = x
    while k:
        if k & 1:
            out = mat_mul(out, base)
        base = mat_mul(base, base)
        k >>= 1
    return out


def trace_of_power(t: int, k: int) -> int:
    """trace(M^k) from trace(M) = t via the Chebyshev recursion."""
    if k == 0:
        return 2
    prev, cur = 2, t
    for _ in range(k - 1):
        prev, cur = cur, t * cur - prev
    return cur


def ambient_classes(t: int) -> list[Mat]:
    """Representatives of the primitive hyperbolic classes of trace t.

    One cycle of reduced forms of discriminant t^2-4 per class; a cycle
    of content u is kept only when (t, u) is the fundamental automorph
    of the underlying primitive discriminant, i.e. the class is not a
    proper power.
    """
    if t < 3:
        return []
    D = t * t - 4
    reps: list[Mat] = []
    u = 1
    while u * u <= D:
        if D % (u * u) == 0:
            d0 = D // (u * u)
            if d0 % 4 in (0, 1) and d0 >= 5:
                if pell_fundamental(d0) == (t, u):
                    for f0 in _primitive_cycle_reps(d0):
                        f = (u * f0[0], u * f0[1], u * f0[2])
                        reps.append(matrix_of_form(f, t))
        u += 1
    return reps


def geodesic_length(t: int) -> float:
    return 2.0 * math.acosh(t / 2.0)


@dataclass(frozen=True)
class GeodesicClass:
    trace: int
    length: float
    multiplicity: int

    def __post_init__(self) -> None:
        if self.trace < 3 or self.multiplicity < 1 or not self.length > 0:
            raise ValueError("invalid geodesic class")


@dataclass(frozen=True)
class LengthSpectrum:
    group: GroupSpec
    max_trace: int
    entries: tuple[GeodesicClass, ...]
    torsion_flagged: bool = field(default=False)

    def counting(self, L: float) -> int:
        """N(L): number of primitive classes of length <= L, with multiplicity."""
        return sum(e.multiplicity for e in self.entries if e.length <= L)

    def filtered(self, max_trace: int) -> "LengthSpectrum":
        return LengthSpectrum(self.group, max_trace,
                              tuple(e for e in self.entries if e.trace <= max_trace),
                              self.torsion_flagged)

    def total_classes(self) -> int:
        return sum(e.multiplicity for e in self.entries)


def _entries_from_counts(counts: dict[int, int]) -> tuple[GeodesicClass, ...]:
    return tuple(GeodesicClass(t, geodesic_length(t), m)
                 for t, m in sorted(counts.items()) if m > 0)


def _thread_count() -> int:
    try:
        return max(1, int(os.environ.get("ZAL_THREADS", "1")))
    except ValueError:
        return 1


def modular_spectrum(max_trace: int) -> LengthSpectrum:
    """Merged primitive spectrum of the modular surface up to trace max_trace."""
    traces = range(3, max_trace + 1)
    nthreads = _thread_count()
    if nthreads > 1 and len(traces) > 8:
        from concurrent.futures import ThreadPoolExecutor
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            per = list(pool.map(lambda t: len(ambient_classes(t)), traces))
    else:
        per = [len(ambient_classes(t)) for t in traces]
    counts = {t: k for t, k in zip(traces, per)}
    return LengthSpectrum(GroupSpec.full(), max_trace, _entries_from_counts(counts),
                          torsion_flagged=True)


# ---------------------------------------------------------------------------
# coset actions of the congruence subgroups


def contains(spec: GroupSpec, M: Mat) -> bool:
    """Membership of +-M in the subgroup, M an SL2(Z) matrix."""
    a, b, c, d = M
    if spec.kind == GroupKind.FULL:
        return True
    if spec.kind == GroupKind.PRINCIPAL2:
        return b % 2 == 0 and c % 2 == 0 and a % 2 == 1 and d % 2 == 1
    p = spec.p
    assert p is not None
    if c % p:
        return False
    if spec.kind == GroupKind.GAMMA0:
        return True
    return (a % p == 1 and d % p == 1) or (a % p == p - 1 and d % p == p - 1)


def _coset_table(spec: GroupSpec) -> tuple[list, dict, list[Mat]]:
    """(labels, label->index, representative matrices), index m entries.

    The label of a coset (Gamma g) is a right-multiplication-equivariant
    invariant of g: the matrix mod 2 for the principal level-2 group,
    the bottom row projectively mod p for Gamma0, the bottom row mod p
    up to sign for Gamma1.
    """
    if spec.kind == GroupKind.FULL:
        return [0], {0: 0}, [M_ID]
    if spec.kind == GroupKind.PRINCIPAL2:
        gens = [(1, 1, 0, 1), (0, -1, 1, 0)]
        labels: list = []
        index: dict = {}
        reps: list[Mat] = []
        frontier = [M_ID]
        lab = _label(spec, M_ID)
        labels.append(lab)
        index[lab] = 0
        reps.append(M_ID)
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = mat_mul(x, g)
                    lab = _label(spec, y)
                    if lab not in index:
                        index[lab] = len(labels)
                        labels.append(lab)
                        reps.append(y)
                        nxt.append(y)
            frontier = nxt
        return labels, index, reps
    p = spec.p
    assert p is not None
    if spec.kind == GroupKind.GAMMA0:
        labels = [(0, 1)] + [(1, j) for j in range(p)]
        reps = [M_ID] + [(0, -1, 1, j) for j in range(p)]
        return labels, {lab: i for i, lab in enumerate(labels)}, reps
    # GAMMA1: bottom rows mod p up to sign
    labels = []
    for c in range(p):
        for d in range(p):
            if c == 0 and d == 0:
                continue
            if (c, d) == _canon_pm(c, d, p):
                labels.append((c, d))
    index = {lab: i for i, lab in enumerate(labels)}
    reps = [_complete_bottom_row(c, d, p) for (c, d) in labels]
    return labels, index, reps


def _canon_pm(c: int, d: int, p: int) -> tuple[int, int]:
    alt = ((-c) % p, (-d) % p)
    return min((c % p, d % p), alt)


def _label(spec: GroupSpec, M: Mat):
    a, b, c, d = M
    if spec.kind == GroupKind.FULL:
        return 0
    if spec.kind == GroupKind.PRINCIPAL2:
        return (a % 2, b % 2, c % 2, d % 2)
    p = spec.p
    assert p is not None
    cp, dp = c % p, d % p
    if spec.kind == GroupKind.GAMMA0:
        if cp == 0:
            return (0, 1)
        return (1, dp * pow(cp, -1, p) % p)
    return _canon_pm(cp, dp, p)


def _label_act(spec: GroupSpec, lab, M: Mat):
    """Label of (coset rep with label lab) * M, computed on labels only."""
    a, b, c, d = M
    if spec.kind == GroupKind.FULL:
        return 0
    if spec.kind == GroupKind.PRINCIPAL2:
        la, lb, lc, ld = lab
        return ((la * a + lb * c) % 2, (la * b + lb * d) % 2,
                (lc * a + ld * c) % 2, (lc * b + ld * d) % 2)
    p = spec.p
    assert p is not None
    lc, ld = lab
    nc, nd = (lc * a + ld * c) % p, (lc * b + ld * d) % p
    if spec.kind == GroupKind.GAMMA0:
        if nc == 0:
            return (0, 1)
        return (1, nd * pow(nc, -1, p) % p)
    return _canon_pm(nc, nd, p)


def _complete_bottom_row(c: int, d: int, p: int) -> Mat:
    """Some SL2(Z) matrix whose bottom row is congruent to (c, d) mod p."""
    for dc in range(0, 4 * p, 1):
        for c0 in (c, c + p, c + 2 * p):
            d0 = d + dc * p
            if c0 == 0 and d0 == 0:
                continue
            if gcd(c0, d0) == 1:
                g, x, y = _ext_gcd(d0, -c0)
                assert g == 1
                return (x, y, c0, d0)
    raise RuntimeError("could not complete bottom row")


def _ext_gcd(x: int, y: int) -> tuple[int, int, int]:
    if y == 0:
        return (x, 1, 0) if x > 0 else (-x, -1, 0)
    g, u, v = _ext_gcd(y, x % y)
    return g, v, u - (x // y) * v


def coset_permutation(spec: GroupSpec, M: Mat) -> list[int]:
    """Permutation induced by right multiplication by M on the coset labels."""
    labels, index, _ = _coset_table(spec)
    return [index[_label_act(spec, lab, M)] for lab in labels]


def _orbit_lengths(perm: list[int]) -> list[int]:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        k = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            k += 1
        out.append(k)
    return out


def subgroup_spectrum(spec: GroupSpec, max_trace: int) -> LengthSpectrum:
    """Primitive length spectrum of the subgroup surface up to trace max_trace.

    Complete by construction: any subgroup class of trace <= max_trace
    lies over an ambient class of trace <= max_trace.
    """
    if spec.kind == GroupKind.FULL:
        sp = modular_spectrum(max_trace)
        return LengthSpectrum(spec, max_trace, sp.entries, torsion_flagged=True)
    counts: dict[int, int] = {}
    for t in range(3, max_trace + 1):
        for M in ambient_classes(t):
            perm = coset_permutation(spec, M)
            for k in _orbit_lengths(perm):
                tk = trace_of_power(t, k)
                if tk <= max_trace:
                    counts[tk] = counts.get(tk, 0) + 1
    return LengthSpectrum(spec, max_trace, _entries_from_counts(counts),
                          torsion_flagged=not spec.torsion_free)


def subgroup_class_representatives(spec: GroupSpec, max_trace: int) -> dict[int, list[Mat]]:
    """Explicit subgroup-conjugacy class representatives, keyed by trace.

    For each ambient class [M] and each coset orbit of size k with orbit
    member label l and representative x_l, the matrix x_l M^k x_l^{-1}
    lies in the subgroup and represents one primitive class.
    """
    labels, index, reps = _coset_table(spec)
    out: dict[int, list[Mat]] = {}
    for t in range(3, max_trace + 1):
        for M in ambient_classes(t):
            perm = coset_permutation(spec, M)
            seen = [False] * len(perm)
            for i in range(len(perm)):
                if seen[i]:
                    continue
                k = 0
                j = i
                while not seen[j]:
                    seen[j] = True
                    j = perm[j]
                    k += 1
                tk = trace_of_power(t, k)
                if tk > max_trace:
                    continue
                x = reps[i]
                W = mat_mul(mat_mul(x, mat_pow(M, k)), mat_inv(x))
                if not contains(spec, W):
                    raise RuntimeError("lifted representative escaped the subgroup")
                out.setdefault(tk, []).append(W)
    return out


def spectrum_to_csv(spectrum: LengthSpectrum) -> str:
    """CSV export: header plus (trace, length, multiplicity) rows."""
    lines = ["trace,length,multiplicity"]
    for e in spectrum.entries:
        lines.append(f"{e.trace},{e.length:.17g},{e.multiplicity}")
    return "\n".join(lines) + "\n"
