"""Renormalisation of kneading pairs and the end-to-end classifier.

Pairs are handled in the coordinates (x, y) = (0alpha, 1beta). A
substitution 0 -> omega, 1 -> nu acts on both coordinates; ratio lists are
stored in application order, so ``ratios = [r1, r2]`` means the pair is
rho_{r2}(rho_{r1}(base)).
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import gcd, sqrt

from .entropy import EntropyResult, entropy_of
from .seq import (
    FULL_ALPHA,
    FULL_BETA,
    EPSeq,
    NotApplicable,
    admissible,
    expand,
    is_parry,
    lex_cmp,
    mirror,
    seq_dist,
    shift,
    varsigma,
)
from .words import (
    DecodeError,
    NoSuchRotation,
    Ratio,
    Substitution,
    one_min,
    rho,
    substitute,
    try_decode,
    zero_max,
)

TAGS = (
    "FullShift",
    "ZeroEntropy",
    "Extremal",
    "Essential",
    "RenormalisableSFT",
    "RenormalisableNonSFT",
    "CodedLimit",
    "HofbauerNonIE",
    "Unsupported",
)


class StrataMismatch(ValueError):
    pass


class EndpointOrder(ValueError):
    pass


class InfiniteRenormalisationSuspected(ArithmeticError):
    pass


def coords(alpha: EPSeq, beta: EPSeq) -> tuple[EPSeq, EPSeq]:
    return alpha.prepend("0"), beta.prepend("1")


def from_coords(x: EPSeq, y: EPSeq) -> tuple[EPSeq, EPSeq]:
    return shift(x, 1), shift(y, 1)


@dataclass(frozen=True)
class AssocPair:
    omega: str
    nu: str

    def __post_init__(self):
        if not self.valid(self.omega, self.nu):
            raise ValueError(f"({self.omega}, {self.nu}) is not an associated pair")

    @staticmethod
    def valid(omega: str, nu: str) -> bool:
        if len(omega) + len(nu) < 3:
            return False
        try:
            if zero_max(omega) != omega or one_min(nu) != nu:
                return False
            nu0, om1 = zero_max(nu), one_min(omega)
        except NoSuchRotation:
            return False
        # non-strict: the Sturmian pairs meet these with equality
        return EPSeq("", nu0) <= EPSeq("", omega) and EPSeq("", nu) <= EPSeq("", om1)

    @property
    def substitution(self) -> Substitution:
        return Substitution(self.omega, self.nu)

    @property
    def trivial(self) -> bool:
        return len(self.omega) + len(self.nu) == 3

    def corner(self) -> tuple[EPSeq, EPSeq]:
        """(omega^inf, nu^inf): the coordinates of the essential pair of the box."""
        return EPSeq("", self.omega), EPSeq("", self.nu)

    def __str__(self) -> str:
        return f"({self.omega},{self.nu})"


@dataclass(frozen=True)
class RenormData:
    pair: AssocPair
    decoded_x: EPSeq
    decoded_y: EPSeq

    def exponents(self) -> dict:
        """Run lengths of the block decomposition of 0alpha and 1beta (preperiod, period)."""

        def runs(w: str) -> list[int]:
            out: list[int] = []
            for i, c in enumerate(w):
                if i and c == w[i - 1]:
                    out[-1] += 1
                else:
                    out.append(1)
            return out

        return {
            "x": [runs(self.decoded_x.pre), runs(self.decoded_x.per)],
            "y": [runs(self.decoded_y.pre), runs(self.decoded_y.per)],
        }


def detect_renorm(alpha: EPSeq, beta: EPSeq) -> RenormData | None:
    """Shortest associated pair (omega, nu) decoding both coordinates, or None."""
    x, y = coords(alpha, beta)
    lx, ly = len(x.pre) + len(x.per), len(y.pre) + len(y.per)
    candidates = sorted(
        ((i, j) for i in range(1, lx + 1) for j in range(1, ly + 1)), key=lambda c: (c[0] + c[1], c[0])
    )
    for i, j in candidates:
        omega, nu = x.prefix(i), y.prefix(j)
        if not AssocPair.valid(omega, nu):
            continue
        pair = AssocPair(omega, nu)
        if (x, y) == pair.corner():
            continue
        s = pair.substitution
        dx, dy = try_decode(s, x), try_decode(s, y)
        if dx is not None and dy is not None:
            return RenormData(pair, dx, dy)
    return None


def _compose(ratios: list[Ratio]):
    subs = [rho(r) for r in ratios]

    def apply(z: EPSeq) -> EPSeq:
        for s in subs:
            z = substitute(s, z)
        return z

    return apply


@dataclass(frozen=True)
class RenormBox:
    base: AssocPair
    level: int = 0
    ratios: tuple[Ratio, ...] = ()

    def __post_init__(self):
        if self.level != len(self.ratios):
            raise ValueError("level must equal the number of ratios")

    @property
    def q_product(self) -> int:
        return reduce(lambda a, r: a * r.q, self.ratios, 1)

    def level0_intervals(self) -> tuple[tuple[EPSeq, EPSeq], tuple[EPSeq, EPSeq]]:
        w, v = self.base.omega, self.base.nu
        return (EPSeq("", w), EPSeq(w, v)), (EPSeq(v, w), EPSeq("", v))

    def hull(self) -> tuple[tuple[EPSeq, EPSeq], tuple[EPSeq, EPSeq]]:
        """Lexicographic hull of each coordinate; substitutions are order preserving."""
        apply = _compose(list(self.ratios))
        (xl, xh), (yl, yh) = self.level0_intervals()
        return (apply(xl), apply(xh)), (apply(yl), apply(yh))

    def to_dict(self) -> dict:
        return {
            "omega": self.base.omega,
            "nu": self.base.nu,
            "level": self.level,
            "ratios": [str(r) for r in self.ratios],
        }


def _within(z: EPSeq, lo: EPSeq, hi: EPSeq) -> bool:
    return lex_cmp(lo, z) <= 0 <= lex_cmp(hi, z)


def box_contains(box: RenormBox, alpha: EPSeq, beta: EPSeq) -> bool:
    x, y = coords(alpha, beta)
    for r in reversed(box.ratios):
        s = rho(r)
        x, y = try_decode(s, x), try_decode(s, y)
        if x is None or y is None:
            return False
    (xl, xh), (yl, yh) = box.level0_intervals()
    return _within(x, xl, xh) and _within(y, yl, yh)


def box_diameter_sq(box: RenormBox) -> Fraction:
    q = box.q_product
    lw, lv = len(box.base.omega), len(box.base.nu)
    return Fraction(1, 2 ** (2 * (q * lw + 1))) + Fraction(1, 2 ** (2 * (q * lv + 1)))


def box_diameter(box: RenormBox) -> float:
    return sqrt(box_diameter_sq(box))


def corner_distance_sq(box: RenormBox) -> Fraction:
    """d_2 between the corners (omega^inf, nu^inf) and (omega nu^inf, nu omega^inf), squared."""
    apply = _compose(list(box.ratios))
    w, v = box.base.omega, box.base.nu
    dx = seq_dist(apply(EPSeq("", w)), apply(EPSeq(w, v)))
    dy = seq_dist(apply(EPSeq("", v)), apply(EPSeq(v, w)))
    return dx * dx + dy * dy


def boxes_disjoint(b1: RenormBox, b2: RenormBox) -> bool:
    if b1.level != b2.level:
        raise StrataMismatch(f"levels {b1.level} and {b2.level} differ")
    (x1, y1), (x2, y2) = b1.hull(), b2.hull()

    def apart(i, j):
        return lex_cmp(i[1], j[0]) < 0 or lex_cmp(j[1], i[0]) < 0

    return apart(x1, x2) or apart(y1, y2)


def _sturmian_ratio(x: EPSeq, y: EPSeq) -> Ratio | None:
    qmax = max(len(x.pre) + len(x.per), len(y.pre) + len(y.per))
    for q in range(2, qmax + 1):
        # x starts with xi_r, which has length q, so q fixes p
        p = x.prefix(q).count("1")
        if not 0 < p < q or gcd(p, q) != 1:
            continue
        r = Ratio(p, q)
        s = rho(r)
        xi, zeta = s.image0, s.image1
        if _within(x, EPSeq("", xi), EPSeq(xi, zeta)) and _within(y, EPSeq(zeta, xi), EPSeq("", zeta)):
            if try_decode(s, x) is not None and try_decode(s, y) is not None:
                return r
    return None


@dataclass(frozen=True)
class Derenormalised:
    base_alpha: EPSeq
    base_beta: EPSeq
    ratios: tuple[Ratio, ...]

    @property
    def level(self) -> int:
        return len(self.ratios)

    @property
    def q_product(self) -> int:
        return reduce(lambda a, r: a * r.q, self.ratios, 1)


def derenormalise(alpha: EPSeq, beta: EPSeq, h_bits: float | None = None) -> Derenormalised:
    """Peel Sturmian substitutions until the pair lies in no Sturmian box."""
    if h_bits is None:
        h_bits = entropy_of(alpha, beta).h_bits
    x, y = coords(alpha, beta)
    peeled: list[Ratio] = []
    q = 1
    while True:
        r = _sturmian_ratio(x, y)
        if r is None:
            break
        s = rho(r)
        x, y = try_decode(s, x), try_decode(s, y)
        peeled.append(r)
        q *= r.q
        # base entropy is at most 1, so q may not exceed 1/h
        if h_bits > 0 and q * h_bits > 1 + 1e-9:
            raise InfiniteRenormalisationSuspected(f"q-product {q} exceeds 1/h = {1 / h_bits:.6g}")
    a0, b0 = from_coords(x, y)
    return Derenormalised(a0, b0, tuple(reversed(peeled)))


def renormalise(alpha: EPSeq, beta: EPSeq, ratios) -> tuple[EPSeq, EPSeq]:
    """Apply rho_{r1}, then rho_{r2}, ... to the pair."""
    x, y = coords(alpha, beta)
    apply = _compose(list(ratios))
    return from_coords(apply(x), apply(y))


def nu_k(k: int) -> str:
    return "100" + "10" * k


def nu_bar_k(k: int) -> str:
    return "011" + "01" * k


def hofbauer_pair(k: int, mirrored: bool = False) -> tuple[EPSeq, EPSeq]:
    if mirrored:
        x, y = EPSeq(nu_bar_k(k), "10"), EPSeq("10", nu_bar_k(k))
    else:
        x, y = EPSeq("01", nu_k(k)), EPSeq(nu_k(k), "01")
    return from_coords(x, y)


@dataclass(frozen=True)
class HofbauerWitness:
    k: int
    mirrored: bool
    level: int
    ratios: tuple[Ratio, ...] = ()

    def to_dict(self) -> dict:
        return {"k": self.k, "mirrored": self.mirrored, "level": self.level, "ratios": [str(r) for r in self.ratios]}


def _hofbauer_base(alpha: EPSeq, beta: EPSeq) -> tuple[int, bool] | None:
    x, y = coords(alpha, beta)
    bound = max(len(x.pre) + len(x.per), len(y.pre) + len(y.per))
    k = 0
    while 3 + 2 * k <= bound:
        for mirrored in (False, True):
            if (alpha, beta) == hofbauer_pair(k, mirrored):
                return k, mirrored
        k += 1
    return None


def hofbauer_check(alpha: EPSeq, beta: EPSeq, der: Derenormalised | None = None) -> HofbauerWitness | None:
    if not admissible(alpha, beta):
        return None
    if der is None:
        h = entropy_of(alpha, beta).h_bits
        if h <= 0:
            return None
        try:
            der = derenormalise(alpha, beta, h)
        except InfiniteRenormalisationSuspected:
            return None
    found = _hofbauer_base(der.base_alpha, der.base_beta)
    if found is None:
        return None
    return HofbauerWitness(found[0], found[1], der.level, der.ratios)


@dataclass(frozen=True)
class Hole:
    a: Fraction
    b: Fraction

    def __post_init__(self):
        a, b = Fraction(self.a), Fraction(self.b)
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        if not (0 <= a and b <= 1):
            raise ValueError(f"hole ({a}, {b}) is not inside [0, 1]")
        if a >= b:
            raise EndpointOrder(f"a = {a} is not below b = {b}")

    @property
    def kind(self) -> str:
        a, b = self.a, self.b
        q, h, tq = Fraction(1, 4), Fraction(1, 2), Fraction(3, 4)
        if q < a < h < b < tq:
            return "Centred"
        if b == 1 and h < a < 1:
            return "Right"
        if a == 0 and 0 < b < h:
            return "Left"
        if b == h and q < a < h:
            return "HalfLeft"
        return "Other"


@dataclass(frozen=True)
class HolePair:
    alpha: EPSeq
    beta: EPSeq
    kind: str
    note: str = ""


def _regularise(x: EPSeq) -> EPSeq:
    return x if is_parry(x) else varsigma(x)


def hole_to_pair(h: Hole) -> HolePair | None:
    """Kneading pair of the survivor set of the hole; None for unsupported holes.

    Dyadic endpoints use the expansion ending in 0^inf.
    """
    kind = h.kind
    if kind == "Centred":
        return HolePair(shift(expand(h.a), 1), shift(expand(h.b), 1), kind)
    if kind == "Right":
        return HolePair(_regularise(expand(h.a)), FULL_BETA, kind, "beta-shift")
    if kind == "Left":
        low = mirror(_regularise(mirror(expand(h.b))))
        return HolePair(FULL_ALPHA, low, kind, "mirrored beta-shift")
    if kind == "HalfLeft":
        return HolePair(_regularise(expand(2 * h.a)), FULL_BETA, kind, "conjugate beta-shift")
    return None


@dataclass
class Classification:
    tag: str
    alpha: EPSeq | None = None
    beta: EPSeq | None = None
    level: int = 0
    ratios: tuple[Ratio, ...] = ()
    base_alpha: EPSeq | None = None
    base_beta: EPSeq | None = None
    entropy: EntropyResult | None = None
    base_entropy: EntropyResult | None = None
    ie: str = "NotApplicable"
    ie_provenance: str = "none"
    witnesses: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        e = self.entropy
        return {
            "tag": self.tag,
            "level": self.level,
            "ratios": [str(r) for r in self.ratios],
            "base_alpha": None if self.base_alpha is None else str(self.base_alpha),
            "base_beta": None if self.base_beta is None else str(self.base_beta),
            "kappa": None if e is None else e.kappa,
            "h_bits": None if e is None else e.h_bits,
            "dim": None if e is None else e.dim,
            "ie": self.ie,
            "ie_provenance": self.ie_provenance,
            "witnesses": self.witnesses,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _oracle_ie(alpha: EPSeq, beta: EPSeq, out: Classification) -> None:
    from .sft import ie_verdict

    v = ie_verdict(alpha, beta)
    out.ie = v.kind
    out.ie_provenance = "oracle-verified"
    out.witnesses["components"] = list(v.component_ids)


def classify_pair(alpha: EPSeq, beta: EPSeq, *, oracle: bool = True) -> Classification:
    """Classify an admissible-or-not pair. ``oracle=False`` skips the automaton IE check."""
    out = Classification("Extremal", alpha, beta)
    verdict = admissible(alpha, beta)
    if not verdict:
        out.witnesses["reason"] = verdict.reason
        return out
    if (alpha, beta) == (FULL_ALPHA, FULL_BETA):
        out.tag, out.entropy = "FullShift", entropy_of(alpha, beta)
        out.base_alpha, out.base_beta, out.base_entropy = alpha, beta, out.entropy
        out.ie, out.ie_provenance = "IntrinsicallyErgodic", "theorem-based"
        if oracle:
            _oracle_ie(alpha, beta, out)
        return out
    out.entropy = entropy_of(alpha, beta)
    if out.entropy.no_root or out.entropy.h_bits <= 0:
        out.tag, out.ie, out.ie_provenance = "ZeroEntropy", "ZeroEntropy", "theorem-based"
        return out
    der = derenormalise(alpha, beta, out.entropy.h_bits)
    out.level, out.ratios = der.level, der.ratios
    out.base_alpha, out.base_beta = der.base_alpha, der.base_beta
    out.base_entropy = entropy_of(der.base_alpha, der.base_beta)
    periodic = der.base_alpha.is_periodic and der.base_beta.is_periodic
    hof = hofbauer_check(alpha, beta, der)
    if hof is not None:
        out.tag = "HofbauerNonIE"
        out.witnesses["hofbauer"] = hof.to_dict()
        out.ie, out.ie_provenance = "NotIntrinsicallyErgodic", "theorem-based"
        if oracle:
            _oracle_ie(alpha, beta, out)
        return out
    ren = detect_renorm(der.base_alpha, der.base_beta)
    if ren is not None:
        out.tag = "RenormalisableSFT" if periodic else "RenormalisableNonSFT"
        out.witnesses["assoc_pair"] = {"omega": ren.pair.omega, "nu": ren.pair.nu, "trivial": ren.pair.trivial}
    elif periodic:
        out.tag = "Essential"
    else:
        out.tag = "CodedLimit"
    out.ie, out.ie_provenance = "IntrinsicallyErgodic", "theorem-based"
    if oracle and out.tag in ("Essential", "RenormalisableSFT"):
        _oracle_ie(alpha, beta, out)
    return out


def classify(item, *, oracle: bool = True) -> Classification:
    """Classify a :class:`Hole` or an (alpha, beta) pair."""
    if isinstance(item, Hole):
        hp = hole_to_pair(item)
        if hp is None:
            return Classification("Unsupported", witnesses={"hole_kind": item.kind})
        out = classify_pair(hp.alpha, hp.beta, oracle=oracle and hp.kind == "Centred")
        out.witnesses["hole_kind"] = hp.kind
        if hp.kind != "Centred" and out.tag not in ("Extremal", "ZeroEntropy"):
            out.ie, out.ie_provenance = "IntrinsicallyErgodic", "theorem-based"
            out.witnesses["reduction"] = hp.note
        return out
    alpha, beta = item
    return classify_pair(alpha, beta, oracle=oracle)


def scaling_gap(c: Classification) -> float:
    """|h - h_base / q-product|; zero up to rounding when the scaling law holds."""
    q = reduce(lambda a, r: a * r.q, c.ratios, 1)
    return abs(c.entropy.h_bits - c.base_entropy.h_bits / q)


__all__ = [
    "TAGS",
    "AssocPair",
    "Classification",
    "DecodeError",
    "Derenormalised",
    "EndpointOrder",
    "Hole",
    "HolePair",
    "HofbauerWitness",
    "InfiniteRenormalisationSuspected",
    "NotApplicable",
    "RenormBox",
    "RenormData",
    "StrataMismatch",
    "box_contains",
    "box_diameter",
    "box_diameter_sq",
    "boxes_disjoint",
    "classify",
    "classify_pair",
    "coords",
    "from_coords",
    "corner_distance_sq",
    "derenormalise",
    "detect_renorm",
    "hofbauer_check",
    "hofbauer_pair",
    "hole_to_pair",
    "renormalise",
    "scaling_gap",
]
