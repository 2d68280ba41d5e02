"""Degenerations of spans of osculating spaces along rational normal curves.

The curve ``gamma_j`` moves the coordinate point ``e_{I_1}`` towards
``e_{I_j}`` via ``e_i -> e_i + t e_{i + (j-1)(r+1)}`` for ``i in I_1``. The
family ``T_t`` is spanned by a static osculating space at ``e_{I_1}`` and the
moving osculating spaces at ``gamma_j(t)``. A hyperplane certificate for a
target ``I`` is a form ``F_I = sum t^{d(I,J)} c_J p_J`` with ``c_I != 0`` that
vanishes identically in ``t`` on every generator of ``T_t``; its limit at
``t = 0`` is ``p_I = 0``.
"""

from __future__ import annotations

import json
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm

import numpy as np

from .combinat import (
    GrassSpec,
    ball,
    binomial_system,
    check_index_set,
    delta_level,
    distance,
    movable_down,
    movable_up,
    standard_blocks,
)
from .exact import QQ, FrameMatrix, PolyT, PrimeField, nullspace, rank_poly, rank_sparse_mod_p
from .exact.fields import DEFAULT_PRIME


class CertificateFailure(ArithmeticError):
    """No hyperplane with ``c_I != 0`` exists, or a certificate failed verification."""

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


# ---------------------------------------------------------------------------
# moving frames

@dataclass(frozen=True)
class CurveFamily:
    spec: GrassSpec
    block: int

    def __post_init__(self):
        if not 2 <= self.block <= self.spec.alpha:
            raise ValueError(f"block {self.block} outside [2, alpha={self.spec.alpha}]")

    @property
    def shift(self) -> int:
        return (self.block - 1) * (self.spec.r + 1)

    def moving_vector(self, i: int) -> dict:
        """``e_i^{j,t}`` as ``{index: t-power}``."""
        if i <= self.spec.r:
            return {i: 0, i + self.shift: 1}
        return {i: 0}

    def curve_point(self) -> dict:
        return expand_moving_point(self.spec, standard_blocks(self.spec)[0], self.block)


def _sort_sign(seq) -> int:
    inv = sum(1 for a, b in combinations(seq, 2) if a > b)
    return -1 if inv % 2 else 1


def expand_moving_point(spec: GrassSpec, K, j: int) -> dict:
    """``e_K^{j,t}`` in the basis ``e_J`` as ``{J: PolyT}`` with true wedge signs.

    Only elements of ``K ∩ I_1`` whose translate is outside ``K`` can move;
    the others produce a repeated vector and drop out.
    """
    K = check_index_set(spec, K)
    sh = CurveFamily(spec, j).shift
    pool = movable_up(spec, K, j)
    out = {}
    for l in range(len(pool) + 1):
        for moved in combinations(pool, l):
            ms = set(moved)
            seq = [x + sh if x in ms else x for x in K]
            out[tuple(sorted(seq))] = PolyT.monomial(_sort_sign(seq), l)
    return out


def root_index(spec: GrassSpec, J, j: int) -> tuple:
    """The unique element of the deepest level ``Δ(J, -s^-)_j``."""
    sh = CurveFamily(spec, j).shift
    down = set(movable_down(spec, J, j))
    return tuple(sorted(x - sh if x in down else x for x in J))


def sign_normal(spec: GrassSpec, J, j: int) -> int:
    """Sign of ``e_J`` in the expansion of ``e^{j,t}`` at its root index.

    With this normalization the coefficient of ``e_J`` in any ``e_K^{j,t}``
    equals ``sign_normal(K) * sign_normal(J) * t^{d(K,J)}``, so rescaling
    ``e_J`` by its sign makes every moving generator sign free.
    """
    J = check_index_set(spec, J)
    coeff = expand_moving_point(spec, root_index(spec, J, j), j)[J]
    return int(coeff.coeffs[-1])


# ---------------------------------------------------------------------------
# families

@dataclass(frozen=True)
class DegenerationMode:
    """Two-point ``(k1, k2)`` along ``gamma_2``, or multi-point ``k`` along all ``gamma_j``."""

    kind: str
    k1: int = 0
    k2: int = 0
    k: int = 0

    @classmethod
    def two_point(cls, k1: int, k2: int) -> "DegenerationMode":
        return cls("two-point", k1=k1, k2=k2)

    @classmethod
    def multi_point(cls, k: int) -> "DegenerationMode":
        return cls("multi-point", k=k)

    @property
    def static_order(self) -> int:
        return self.k1 if self.kind == "two-point" else self.k

    @property
    def moving_order(self) -> int:
        return self.k2 if self.kind == "two-point" else self.k

    @property
    def threshold(self) -> int:
        """Targets ``I`` are those with ``d(I, I_1)`` above this value."""
        return self.k1 + self.k2 + 1 if self.kind == "two-point" else 2 * self.k + 1

    def to_dict(self) -> dict:
        if self.kind == "two-point":
            return {"mode": self.kind, "k1": self.k1, "k2": self.k2}
        return {"mode": self.kind, "k": self.k}

    @classmethod
    def from_dict(cls, d: dict) -> "DegenerationMode":
        if d["mode"] == "two-point":
            return cls.two_point(int(d["k1"]), int(d["k2"]))
        if d["mode"] == "multi-point":
            return cls.multi_point(int(d["k"]))
        raise ValueError(f"unknown mode {d['mode']!r}")


@dataclass
class Generator:
    label: str
    coords: dict  # index set -> PolyT
    block: int | None = None  # None for static generators


@dataclass
class TFamily:
    spec: GrassSpec
    mode: DegenerationMode
    generators: list
    blocks: list
    by_coord: dict = field(repr=False, default_factory=dict)

    def __post_init__(self):
        idx = defaultdict(list)
        for g, gen in enumerate(self.generators):
            for J in gen.coords:
                idx[J].append(g)
        self.by_coord = dict(idx)

    @property
    def static(self) -> list:
        return [g for g in self.generators if g.block is None]

    @property
    def moving(self) -> list:
        return [g for g in self.generators if g.block is not None]

    def generators_touching(self, support) -> list:
        hit = set()
        for J in support:
            hit.update(self.by_coord.get(J, ()))
        return [self.generators[g] for g in sorted(hit)]

    def reachable(self, I) -> list:
        """Blocks whose moving generators have a nonzero ``p_I`` coordinate."""
        I = tuple(I)
        D = distance(I, standard_blocks(self.spec)[0])
        k = self.mode.moving_order
        return [j for j in self.blocks if len(movable_down(self.spec, I, j)) >= D - k]

    def generator_matrix(self) -> FrameMatrix:
        """Dense generator matrix over Q[t]; columns are the coordinates touched."""
        cols = sorted(self.by_coord)
        rows = [[g.coords.get(J, PolyT()) for J in cols] for g in self.generators]
        return FrameMatrix(rows, QQ, [g.label for g in self.generators], cols)


def _check_mode(spec: GrassSpec, mode: DegenerationMode):
    spec.require_standard()
    if mode.kind == "two-point":
        if min(mode.k1, mode.k2) < 0 or mode.k1 + mode.k2 > spec.r - 1:
            raise ValueError(f"two-point mode needs k1, k2 >= 0 and k1+k2 <= r-1, "
                             f"got k1={mode.k1}, k2={mode.k2}, r={spec.r}")
    elif mode.kind == "multi-point":
        if mode.k < 0 or 2 * mode.k > spec.r - 1:
            raise ValueError(f"multi-point mode needs 0 <= k <= (r-1)/2, got k={mode.k}, r={spec.r}")
    else:
        raise ValueError(f"unknown mode {mode.kind!r}")


def build_family(spec: GrassSpec, mode: DegenerationMode) -> TFamily:
    _check_mode(spec, mode)
    I1 = standard_blocks(spec)[0]
    blocks = [2] if mode.kind == "two-point" else list(range(2, spec.alpha + 1))
    gens = []
    for L in sorted(ball(spec, I1, mode.static_order)):
        gens.append(Generator(f"e{list(L)}", {L: PolyT.const(1)}))
    moving = sorted(ball(spec, I1, mode.moving_order))
    for j in blocks:
        for K in moving:
            gens.append(Generator(f"e{list(K)}^(t,{j})", expand_moving_point(spec, K, j), j))
    return TFamily(spec, mode, gens, blocks)


def targets(spec: GrassSpec, mode: DegenerationMode):
    """All ``I`` with ``d(I, I_1) > threshold``, grouped by distance."""
    I1 = standard_blocks(spec)[0]
    outside = [x for x in range(spec.n + 1) if x > spec.r]
    for D in range(mode.threshold + 1, spec.r + 2):
        for keep in combinations(I1, spec.r + 1 - D):
            for add in combinations(outside, D):
                yield tuple(sorted(keep + add))


# ---------------------------------------------------------------------------
# certificates

@dataclass
class HyperplaneCertificate:
    spec: GrassSpec
    mode: DegenerationMode
    target: tuple
    block: object  # int or "trivial"
    coeffs: dict  # J -> Fraction; the form is sum t^{d(I,J)} c_J p_J
    ansatz: str = "trivial"
    levels: list | None = None  # c_0..c_L for the sign-normalized level ansatz

    def form_on(self, coords: dict) -> PolyT:
        """``F_I`` evaluated on a point given as ``{J: PolyT}``."""
        acc = PolyT()
        for J, c in self.coeffs.items():
            v = coords.get(J)
            if v is not None:
                acc = acc + PolyT.monomial(c, distance(self.target, J)) * v
        return acc

    def to_dict(self) -> dict:
        d = {"r": self.spec.r, "n": self.spec.n, **self.mode.to_dict(),
             "target": list(self.target), "block": self.block, "field": "QQ",
             "coeffs": [[list(J), c.numerator, c.denominator]
                        for J, c in sorted(self.coeffs.items())]}
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "HyperplaneCertificate":
        spec = GrassSpec(int(d["r"]), int(d["n"]))
        mode = DegenerationMode.from_dict(d)
        coeffs = {check_index_set(spec, J): Fraction(num, den) for J, num, den in d["coeffs"]}
        block = d["block"] if d["block"] == "trivial" else int(d["block"])
        return cls(spec, mode, check_index_set(spec, d["target"]), block, coeffs, "loaded")


def _primitive(vec: dict) -> dict:
    """Scale to coprime integers with positive target coefficient."""
    den = lcm(*(Fraction(v).denominator for v in vec.values()))
    ints = {J: int(Fraction(v) * den) for J, v in vec.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {J: Fraction(v // g) for J, v in ints.items() if v}


def certificate_support(family: TFamily, I, j: int) -> list:
    """Ansatz support: ``Δ(I)^-_j`` (two-point) or its first levels ``Γ`` (multi-point)."""
    spec = family.spec
    s_minus = len(movable_down(spec, I, j))
    top = s_minus
    if family.mode.kind == "multi-point":
        D = distance(I, standard_blocks(spec)[0])
        top = min(s_minus, family.mode.k + 1 - D + s_minus)
    out = []
    for l in range(top + 1):
        out.extend(sorted(delta_level(spec, I, j, -l)))
    return out


def _assemble(family: TFamily, I, support, unknown_of, scale_of):
    """Linear conditions ``F_I(g) == 0`` (coefficientwise in t) over the unknowns."""
    rows = []
    for gen in family.generators_touching(support):
        per_power = defaultdict(lambda: defaultdict(Fraction))
        for J in support:
            v = gen.coords.get(J)
            if v is None:
                continue
            d = distance(I, J)
            u = unknown_of[J]
            for p, c in enumerate(v.coeffs):
                if c:
                    per_power[p + d][u] += scale_of[J] * Fraction(c)
        for p in sorted(per_power):
            row = per_power[p]
            if any(row.values()):
                rows.append(row)
    return rows


def _solve(rows, nunk: int, target_unknown: int):
    dense = [[row.get(u, Fraction(0)) for u in range(nunk)] for row in rows]
    for v in nullspace(dense, nunk, QQ):
        if v[target_unknown] != 0:
            return [x / v[target_unknown] for x in v]
    return None


def certify_target(family: TFamily, I) -> HyperplaneCertificate:
    spec, mode = family.spec, family.mode
    I = check_index_set(spec, I)
    I1 = standard_blocks(spec)[0]
    D = distance(I, I1)
    if D <= mode.threshold:
        raise ValueError(f"target {I} has d(I, I_1)={D} <= {mode.threshold}")
    reach = family.reachable(I)
    if not reach:
        return HyperplaneCertificate(spec, mode, I, "trivial", {I: Fraction(1)})
    if len(reach) > 1:
        raise CertificateFailure(f"target {I} is reached from blocks {reach}, expected a unique one",
                                 {"target": list(I), "blocks": reach})
    j = reach[0]
    support = certificate_support(family, I, j)
    # level ansatz: c_J = sign_normal(J) * c_{d(I, J)}
    sI = sign_normal(spec, I, j)
    level_of = {J: distance(I, J) for J in support}
    scale = {J: Fraction(sign_normal(spec, J, j) * sI) for J in support}
    nlev = max(level_of.values()) + 1
    rows = _assemble(family, I, support, level_of, scale)
    sol = _solve(rows, nlev, 0)
    if sol is not None:
        coeffs = _primitive({J: scale[J] * sol[level_of[J]] for J in support})
        prim = coeffs[I]
        levels = [x * prim for x in sol]
        return HyperplaneCertificate(spec, mode, I, j, coeffs, "level", levels)
    unk = {J: u for u, J in enumerate(support)}
    rows = _assemble(family, I, support, unk, {J: Fraction(1) for J in support})
    sol = _solve(rows, len(support), unk[I])
    if sol is None:
        raise CertificateFailure(
            f"no hyperplane with c_I != 0 for target {I}",
            {"target": list(I), "support": [list(J) for J in support],
             "rows": [{str(k): str(v) for k, v in r.items()} for r in rows]})
    coeffs = _primitive({J: sol[unk[J]] for J in support})
    return HyperplaneCertificate(spec, mode, I, j, coeffs, "full")


def verify_certificate(cert: HyperplaneCertificate, family: TFamily | None = None) -> bool:
    """Exact check that ``F_I`` is the zero polynomial on every generator of ``T_t``."""
    family = family or build_family(cert.spec, cert.mode)
    I1 = standard_blocks(cert.spec)[0]
    if distance(cert.target, I1) <= cert.mode.threshold:
        return False
    if cert.coeffs.get(cert.target, 0) == 0:
        return False
    return all(cert.form_on(g.coords).is_zero() for g in family.generators_touching(cert.coeffs))


def check_binomial_levels(cert: HyperplaneCertificate) -> bool:
    """Two-point level certificates solve the reduced binomial system on ``c_0..c_s``."""
    if cert.levels is None or cert.mode.kind != "two-point":
        return True
    s = len(cert.levels) - 1
    D = distance(cert.target, standard_blocks(cert.spec)[0])
    k1, k2 = cert.mode.k1, cert.mode.k2
    for row in binomial_system(s, D, k1, k2):
        if sum(a * c for a, c in zip(row, cert.levels)) != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# reports

@dataclass
class ContainmentReport:
    r: int
    n: int
    mode: dict
    targets: int
    trivial: int
    solved: int
    level_ansatz: int
    full_ansatz: int
    binomial_checked: int
    verdict: bool
    failures: list

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self.__dataclass_fields__}


def verify_limit_containment(spec: GrassSpec, mode: DegenerationMode, family=None,
                             keep_certificates: bool = False):
    """Certify ``T_0 ⊂ T^{threshold}_{e_{I_1}}`` target by target.

    Returns the report, plus the list of certificates when
    ``keep_certificates`` is set.
    """
    family = family or build_family(spec, mode)
    counts = defaultdict(int)
    certs, failures = [], []
    for I in targets(spec, mode):
        counts["targets"] += 1
        try:
            cert = certify_target(family, I)
        except CertificateFailure as exc:
            failures.append({"target": list(I), "reason": str(exc), "system": exc.payload})
            break
        if not verify_certificate(cert, family):
            failures.append({"target": list(I), "reason": "certificate does not vanish",
                             "certificate": cert.to_dict()})
            break
        if cert.block == "trivial":
            counts["trivial"] += 1
        else:
            counts["solved"] += 1
            counts[cert.ansatz] += 1
            if cert.levels is not None and mode.kind == "two-point":
                if not check_binomial_levels(cert):
                    failures.append({"target": list(I), "reason": "binomial cross-check failed",
                                     "certificate": cert.to_dict()})
                    break
                counts["binomial"] += 1
        if keep_certificates:
            certs.append(cert)
    report = ContainmentReport(spec.r, spec.n, mode.to_dict(), counts["targets"], counts["trivial"],
                               counts["solved"], counts["level"], counts["full"],
                               counts["binomial"], not failures, failures)
    return (report, certs) if keep_certificates else report


def span_rank_samples(family: TFamily, samples: int = 3, seed: int = 0,
                      prime: int = DEFAULT_PRIME) -> list:
    """Rank of the generator matrix at random ``t`` in ``[2, p-2]``.

    Static generators are unit vectors on the static ball, so the rank is
    the ball size plus the rank of the moving rows with those columns deleted;
    the latter is computed by sparse elimination.
    """
    fp = PrimeField(prime)
    rng = np.random.default_rng(np.random.SeedSequence([seed, family.spec.r, family.spec.n]))
    static_cols = {next(iter(g.coords)) for g in family.static}
    out = []
    for _ in range(samples):
        t0 = fp.random_nonspecial(rng)
        rows = []
        for g in family.moving:
            row = {}
            for J, v in g.coords.items():
                if J in static_cols:
                    continue
                x = _eval(v, t0, fp.p)
                if x:
                    row[J] = x
            rows.append(row)
        out.append(len(static_cols) + rank_sparse_mod_p(rows, fp.p))
    return out


def _eval(poly: PolyT, t0: int, p: int) -> int:
    acc = 0
    for c in reversed(poly.coeffs):
        c = Fraction(c)
        acc = (acc * t0 + c.numerator * pow(c.denominator, -1, p)) % p
    return acc


@dataclass
class RegularityWitness:
    r: int
    n: int
    k: int
    alpha: int
    containment: ContainmentReport
    span_ranks: list
    exact_rank: int | None
    dim_constant: bool
    verdict: bool

    def to_dict(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__}
        d["containment"] = self.containment.to_dict()
        return d


def osculating_regularity_witness(spec: GrassSpec, k: int, samples: int = 3, seed: int = 0,
                                  exact_max_cols: int = 40) -> RegularityWitness:
    """Multi-point containment together with constancy of ``dim T_t`` for generic ``t``."""
    mode = DegenerationMode.multi_point(k)
    family = build_family(spec, mode)
    report = verify_limit_containment(spec, mode, family)
    ranks = span_rank_samples(family, samples, seed)
    exact = None
    if len(family.by_coord) <= exact_max_cols:
        exact = rank_poly(family.generator_matrix(), samples=samples, seed=seed, exact=True)
    constant = len(set(ranks)) == 1 and (exact is None or exact == ranks[0])
    return RegularityWitness(spec.r, spec.n, k, spec.alpha, report, ranks, exact, constant,
                             report.verdict and constant)


def certificates_to_json(certs) -> str:
    return json.dumps([c.to_dict() for c in certs], sort_keys=True, indent=2)


def certificates_from_json(text: str) -> list:
    data = json.loads(text)
    if isinstance(data, dict):
        data = [data]
    return [HyperplaneCertificate.from_dict(d) for d in data]
