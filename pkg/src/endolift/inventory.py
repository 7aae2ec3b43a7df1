"""Exact-integer bookkeeping for the component inventory.

Everything in this module is closed-form combinatorics: conductors of
quadratic orders, unit-group indices, endomorphism-order thresholds,
per-component intersection numbers, and the assembled totals, all in exact
arbitrary-precision arithmetic with every division checked.
"""

from fractions import Fraction
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple, Union

from .errors import ConsistencyFailure, NotAnOrder

CaseLike = Union[str, object]


def _case_label(case: CaseLike) -> str:
    ram = getattr(case, "ramified", None)
    if ram is not None:
        return "ram" if ram else "unr"
    if case in ("unr", "unramified"):
        return "unr"
    if case in ("ram", "ramified"):
        return "ram"
    raise ValueError(f"unknown case {case!r}")


def _case_p(case: CaseLike, p: Optional[int]) -> int:
    got = getattr(case, "p", None)
    if got is not None:
        if p is not None and p != got:
            raise ValueError("conflicting primes")
        return got
    if p is None:
        raise ValueError("a prime is required when the case is given by label")
    return p


def _exact_div(num: int, den: int) -> int:
    q, r = divmod(num, den)
    if r:
        raise ConsistencyFailure(f"inexact division {num}/{den}")
    return q


def _vp(n: int, p: int) -> int:
    if n == 0:
        raise NotAnOrder("zero discriminant: the generator lies in the base ring")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def conductor(tr: int, nm: int, case: CaseLike, p: Optional[int] = None) -> int:
    """Conductor exponent of the order generated by an element with the
    given trace and norm.

    The discriminant of the generated order is tr^2 - 4*nm; its valuation
    exceeds the valuation of the field discriminant by twice the conductor,
    and that excess must be even.
    """
    label = _case_label(case)
    p = _case_p(case, p)
    disc = tr * tr - 4 * nm
    v = _vp(disc, p)
    unit = disc // p**v
    field_v = 0 if label == "unr" else 1
    if (v - field_v) % 2 != 0:
        raise ValueError(
            f"discriminant valuation {v} has the wrong parity for the {label} case"
        )
    if label == "unr" and pow(unit % p, (p - 1) // 2, p) == 1:
        # a unit square cannot be the discriminant of the nonsplit quadratic
        raise NotAnOrder("square discriminant: the generator splits the algebra")
    return (v - field_v) // 2


def unit_index(case: CaseLike, t: int, s: int, p: Optional[int] = None) -> int:
    """Index of the level-s unit subgroup inside the level-t one."""
    label = _case_label(case)
    p = _case_p(case, p)
    if not 0 <= t <= s:
        raise ValueError("need 0 <= t <= s")
    if t == s:
        return 1
    if label == "unr" and t == 0:
        return p ** (s - 1) * (p - 1)
    return p ** (s - t)


def keating_threshold(case: CaseLike, k: int, p: Optional[int] = None) -> int:
    """The threshold a(k) (unramified) or b(k) = p^k + a(k) (ramified)."""
    label = _case_label(case)
    p = _case_p(case, p)
    if k < 0:
        raise ValueError("negative level")
    a = _exact_div((p + 1) * (p**k - 1), p - 1)
    return a if label == "unr" else p**k + a


def endo_order_level(case: CaseLike, s: int, k: int, p: Optional[int] = None) -> int:
    """Conductor of the largest order still lifting at Artinian level k.

    The step function of the threshold table: the smallest j with
    k <= threshold(j), capped at the quasi-canonical level s.
    """
    p = _case_p(case, p)
    j = 0
    while j < s and k > keating_threshold(case, j, p):
        j += 1
    return j


def intersection_number(
    case: CaseLike,
    kind: str,
    s: int,
    t: Optional[int] = None,
    p: Optional[int] = None,
) -> int:
    """Intersection number of one proper horizontal component.

    Standard components meet the base locus in 1 + threshold(t) where t is
    the orbit level; nonstandard ones (ramified case, p odd) always meet it
    transversally.
    """
    label = _case_label(case)
    p = _case_p(case, p)
    if kind == "horizontal-nonstandard":
        if label != "ram":
            raise ValueError("nonstandard components only exist in the ramified case")
        return 1
    if kind != "horizontal-standard":
        raise ValueError(f"unknown kind {kind!r}")
    if t is None or not 0 <= t < s:
        raise ValueError("standard components need an orbit level 0 <= t < s")
    return 1 + keating_threshold(case, t, p)


def vertical_multiplicity_closed_form(p: int, c0: int) -> int:
    """2*p^(c0-1) + 4*p^(c0-2) + ... + (2*c0)*p^0; zero when c0 = 0."""
    return sum(2 * (j + 1) * p ** (c0 - 1 - j) for j in range(c0))


# ---------------------------------------------------------------------------
# assembled inventories


@dataclass(frozen=True)
class ComponentRecord:
    kind: str  # horizontal-standard | horizontal-nonstandard | vertical
    level: Optional[int]  # s, None for vertical components
    orbit_level: Optional[int]  # t, where applicable
    count: int
    multiplicity: int
    intersection: Optional[int]  # None on improper components
    proper: bool


@dataclass(frozen=True)
class ComponentInventory:
    case: str
    p: int
    c0: int
    records: Tuple[ComponentRecord, ...]

    def proper_records(self) -> List[ComponentRecord]:
        return [r for r in self.records if r.proper]

    def horizontal_proper_intersection(self) -> int:
        return sum(
            r.count * r.multiplicity * r.intersection
            for r in self.records
            if r.proper and r.kind != "vertical"
        )

    def vertical_contribution(self) -> int:
        return sum(
            r.count * r.multiplicity * r.intersection
            for r in self.records
            if r.kind == "vertical"
        )

    def total_proper(self) -> int:
        return sum(
            r.count * r.multiplicity * r.intersection for r in self.proper_records()
        )


def component_inventory(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> ComponentInventory:
    """Enumerate every irreducible-component class at conductor c0.

    Per level s: one improper standard component (the identity orbit), the
    proper standard orbits partitioned by orbit level t with counts
    |H_t/H_s| - |H_(t+1)/H_s|, and (ramified only) p^s nonstandard
    components, all of multiplicity one.  For c0 > 0 there are additionally
    two vertical components carrying the whole multiplicity of the fiber.
    """
    label = _case_label(case)
    p = _case_p(case, p)
    records: List[ComponentRecord] = []
    for s in range(c0 + 1):
        records.append(
            ComponentRecord("horizontal-standard", s, None, 1, 1, None, False)
        )
        for t in range(s):
            count = unit_index(label, t, s, p) - unit_index(label, t + 1, s, p)
            if count == 0:
                continue
            records.append(
                ComponentRecord(
                    "horizontal-standard",
                    s,
                    t,
                    count,
                    1,
                    intersection_number(label, "horizontal-standard", s, t, p),
                    True,
                )
            )
        if label == "ram":
            records.append(
                ComponentRecord("horizontal-nonstandard", s, None, p**s, 1, 1, True)
            )
    if c0 > 0:
        records.append(
            ComponentRecord(
                "vertical", None, None, 2, vertical_multiplicity_closed_form(p, c0), 1, True
            )
        )
    return ComponentInventory(label, p, c0, tuple(records))


def total_proper_closed_form(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> int:
    label = _case_label(case)
    p = _case_p(case, p)
    if label == "unr":
        return c0 * (
            _exact_div(p ** (c0 + 1) - 1, p - 1) + _exact_div(p**c0 - 1, p - 1)
        )
    return (2 * c0 + 1) * _exact_div(p ** (c0 + 1) - 1, p - 1)


def total_proper_intersection(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> int:
    """Total proper intersection, assembled from the inventory and checked
    against the closed form."""
    inv = component_inventory(case, p, c0)
    total = inv.total_proper()
    expected = total_proper_closed_form(case, p, c0)
    if total != expected:
        raise ConsistencyFailure(
            f"assembled total {total} != closed form {expected} "
            f"at ({inv.case}, p={inv.p}, c0={c0})"
        )
    return total


# ---------------------------------------------------------------------------
# proof-level per-level sums and the displayed closed forms


def per_level_proper_sum(case: CaseLike, s: int, p: Optional[int] = None) -> int:
    """Sum of intersection numbers over the proper standard orbits at one
    level, straight from the inventory rows."""
    label = _case_label(case)
    p = _case_p(case, p)
    total = 0
    for t in range(s):
        count = unit_index(label, t, s, p) - unit_index(label, t + 1, s, p)
        total += count * intersection_number(label, "horizontal-standard", s, t, p)
    return total


def per_level_proper_sum_closed_form(case: CaseLike, s: int, p: Optional[int] = None) -> int:
    """The proof-level expression for the same per-level sum."""
    label = _case_label(case)
    p = _case_p(case, p)
    if s == 0:
        return 0
    if label == "unr":
        return (
            p ** (s - 1) * (p - 2)
            + p ** (s - 1) * (p + 1) * (s - 1)
            - _exact_div(2 * (p ** (s - 1) - 1), p - 1)
        )
    return 2 * s * p**s - _exact_div(2 * p**s - 2, p - 1)


def displayed_corollary_value(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> Fraction:
    """The printed closed form for the proper-horizontal intersection sum.

    Returned as an exact fraction: the ramified display does not even
    evaluate to the assembled total (see displayed_corollary_report), and
    trusting it silently would poison the grand totals.
    """
    label = _case_label(case)
    p = _case_p(case, p)
    if label == "unr":
        num = -4 * p * (p**c0 - 1) + 2 * c0 * (p - 1) + c0 * p**c0 * (p * p - 1)
        return Fraction(num, (p - 1) ** 2)
    return Fraction(-4 * p ** (c0 + 1) + 2 * p + 2, (p - 1) ** 2) - Fraction(
        (2 * c0 + 1) * p ** (c0 + 1) + 2 * c0 + 1, p - 1
    )


def displayed_corollary_report(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> Dict[str, object]:
    """Compare the printed closed form against the assembled per-level sums.

    The unramified display agrees; the ramified display comes out negative
    (already at p=3, c0=1 it gives -22 against an assembled 8), so the
    assembled value is authoritative and the display is flagged.
    """
    label = _case_label(case)
    p = _case_p(case, p)
    inv = component_inventory(label, p, c0)
    assembled = inv.horizontal_proper_intersection()
    displayed = displayed_corollary_value(label, p, c0)
    return {
        "case": label,
        "p": p,
        "c0": c0,
        "assembled": assembled,
        "displayed": displayed,
        "agree": displayed == assembled,
    }


# ---------------------------------------------------------------------------
# degrees and special-fiber lengths


def level_degree(case: CaseLike, k: int, p: Optional[int] = None) -> int:
    """Degree of the level-k quasi-canonical layer over the base."""
    label = _case_label(case)
    p = _case_p(case, p)
    if k < 0:
        raise ValueError("negative level")
    if label == "unr":
        return 1 if k == 0 else (p + 1) * p ** (k - 1)
    return 2 * p**k


def special_fiber_length(case: CaseLike, p: Optional[int] = None, c0: int = 0) -> int:
    """Length of the mod-p fiber of the one-variable deformation ring."""
    label = _case_label(case)
    p = _case_p(case, p)
    if label == "unr":
        return 2 * _exact_div(p**c0 - 1, p - 1) + p**c0
    return 2 * _exact_div(p ** (c0 + 1) - 1, p - 1)


def auxiliary_formulas(
    case: CaseLike,
    p: Optional[int] = None,
    c0: Optional[int] = None,
    k: Optional[int] = None,
) -> Dict[str, object]:
    """Degrees of the quasi-canonical layers and the fiber-length identity.

    With c0 supplied the record carries all level degrees up to c0, their
    sum, and the special-fiber length (the two must agree: the fiber is
    exactly the union of the layers, with nothing left over).
    """
    label = _case_label(case)
    p = _case_p(case, p)
    out: Dict[str, object] = {"case": label, "p": p}
    if k is not None:
        out["k"] = k
        out["degree"] = level_degree(label, k, p)
    if c0 is not None:
        degrees = [level_degree(label, j, p) for j in range(c0 + 1)]
        fiber = special_fiber_length(label, p, c0)
        if sum(degrees) != fiber:
            raise ConsistencyFailure(
                f"degree sum {sum(degrees)} != fiber length {fiber} "
                f"at ({label}, p={p}, c0={c0})"
            )
        out["c0"] = c0
        out["degrees"] = degrees
        out["fiber_length"] = fiber
    return out


# ---------------------------------------------------------------------------
# order descriptions


@dataclass(frozen=True)
class QuadraticOrderDesc:
    """A quadratic order given by its case and conductor, optionally
    remembering the trace and norm of a defining element."""

    case: str
    p: int
    c0: int
    gamma: Optional[Tuple[int, int]] = None  # (trace, norm)

    def __post_init__(self):
        object.__setattr__(self, "case", _case_label(self.case))
        if self.c0 < 0:
            raise ValueError("negative conductor")
        if self.gamma is not None:
            tr, nm = self.gamma
            got = conductor(tr, nm, self.case, self.p)
            if got != self.c0:
                raise ConsistencyFailure(
                    f"declared conductor {self.c0} but the element has {got}"
                )

    @classmethod
    def from_gamma(cls, tr: int, nm: int, case: CaseLike, p: Optional[int] = None) -> "QuadraticOrderDesc":
        label = _case_label(case)
        p = _case_p(case, p)
        return cls(label, p, conductor(tr, nm, label, p), (tr, nm))
