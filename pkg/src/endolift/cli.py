"""Batch front-end: parameter sweeps over the exact-arithmetic suites.

Five commands (`inventory`, `recursion`, `multiplicity`, `lattice`,
`selfcheck`) share one report shape: a JSON object with fields
{schema_version, command, config, rows, footers, verdicts, errata}, or a
TSV projection of the rows.  Reports go to stdout and to a file named
<command>.<ext> in the output directory (the ENDOLIFT_OUT_DIR environment
variable overrides the default, which is the working directory).  Reruns
with the same config are byte-identical: grids are walked in sorted order
and nothing time- or host-dependent is emitted.

Exit codes: 0 all selected checks pass; 1 a check failed; 2 usage error;
3 precision or window exhaustion.
"""

import argparse
import json
import os
import sys
from typing import Dict, List, Optional, Tuple

from . import inventory as inv
from . import lattices as lab
from . import lengths
from . import windows as win
from .errors import (
    ConsistencyFailure,
    EndoliftError,
    NotAnOrder,
    PrecisionExhausted,
    PrecisionTooLow,
    ShapeViolation,
    StabilityFailure,
    StructureViolation,
    WindowExhausted,
)

SCHEMA_VERSION = 1
OUT_DIR_ENV = "ENDOLIFT_OUT_DIR"

SUBLATTICE_ERRATUM = (
    "classical display of the stable index-p^k sublattice puts the larger "
    "exponent on f0; operator stability forces it onto e0.  Canonical form "
    "reported here: (p^(a+eps) e0, p^a f0).  Lie-parity conclusions are "
    "unaffected."
)


# ---------------------------------------------------------------------------
# argument plumbing


def _parse_int_list(text: str) -> List[int]:
    """Accepts "3", "3,5,7", and "0..4" (inclusive range)."""
    out: List[int] = []
    for chunk in text.split(","):
        chunk = chunk.strip()
        if not chunk:
            continue
        if ".." in chunk:
            lo_s, hi_s = chunk.split("..", 1)
            lo, hi = int(lo_s), int(hi_s)
            if hi < lo:
                raise ValueError(f"empty range {chunk!r}")
            out.extend(range(lo, hi + 1))
        else:
            out.append(int(chunk))
    if not out:
        raise ValueError(f"no integers in {text!r}")
    return sorted(set(out))


_TRUE_WORDS = {"1", "true", "yes", "on"}
_FALSE_WORDS = {"0", "false", "no", "off"}


def _parse_config_file(path: str) -> Dict[str, str]:
    values: Dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key = value")
            key, value = line.split("=", 1)
            values[key.strip().replace("-", "_")] = value.strip()
    return values


def _resolve(ns, key: str, file_cfg: Dict[str, str], default):
    """Command line beats config file beats hard default."""
    cli_val = getattr(ns, key, None)
    if cli_val is not None:
        return cli_val
    if key in file_cfg:
        raw = file_cfg[key]
        if isinstance(default, bool):
            low = raw.lower()
            if low in _TRUE_WORDS:
                return True
            if low in _FALSE_WORDS:
                return False
            raise ValueError(f"config key {key}: not a boolean: {raw!r}")
        if isinstance(default, int):
            return int(raw)
        return raw
    return default


def _add_common(sub):
    sub.add_argument("--case", choices=["unr", "ram", "both"], default=None)
    sub.add_argument("--p", default=None, help="prime or list: 3 | 3,5 | 3..7")
    sub.add_argument("--c0", default=None, help="conductor or list/range")
    sub.add_argument("--k", type=int, default=None, help="tower depth")
    sub.add_argument("--format", choices=["json", "tsv"], default=None)
    sub.add_argument(
        "--precision-scale",
        dest="precision_scale",
        type=int,
        default=None,
        help="multiply declared p-adic precision (>= 1)",
    )
    sub.add_argument("--dump", action="store_const", const=True, default=None)
    sub.add_argument("--config", default=None, help="key = value file mirroring flags")


def _case_labels(choice: str) -> List[str]:
    return ["unr", "ram"] if choice == "both" else [choice]


# ---------------------------------------------------------------------------
# report emission


def _emit(command: str, config: Dict, rows: List[Dict], footers: Dict,
          verdicts: List[Dict], errata: List[Dict], fmt: str) -> None:
    if fmt == "json":
        report = {
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "config": config,
            "rows": rows,
            "footers": footers,
            "verdicts": verdicts,
            "errata": errata,
        }
        text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    else:
        columns = sorted({key for row in rows for key in row})
        lines = ["\t".join(columns)]
        for row in rows:
            lines.append(
                "\t".join("" if row.get(c) is None else str(row.get(c)) for c in columns)
            )
        text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    out_dir = os.environ.get(OUT_DIR_ENV) or "."
    ext = "json" if fmt == "json" else "tsv"
    path = os.path.join(out_dir, f"{command}.{ext}")
    try:
        os.makedirs(out_dir, exist_ok=True)
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        print(f"warning: could not write {path}: {exc}", file=sys.stderr)


def _exit_code(verdicts: List[Dict]) -> int:
    return 0 if all(v["pass"] for v in verdicts) else 1


# ---------------------------------------------------------------------------
# inventory


def cmd_inventory(ns) -> int:
    file_cfg = _parse_config_file(ns.config) if ns.config else {}
    cases = _case_labels(_resolve(ns, "case", file_cfg, "both"))
    ps = _parse_int_list(_resolve(ns, "p", file_cfg, "3"))
    c0s = _parse_int_list(_resolve(ns, "c0", file_cfg, "1"))
    fmt = _resolve(ns, "format", file_cfg, "json")
    config = {"case": cases, "p": ps, "c0": c0s, "format": fmt}

    rows: List[Dict] = []
    footers: Dict = {}
    verdicts: List[Dict] = []
    errata: List[Dict] = []
    for label in cases:
        for p in ps:
            for c0 in c0s:
                tag = f"{label} p={p} c0={c0}"
                cinv = inv.component_inventory(label, p, c0)
                for rec in cinv.records:
                    rows.append(
                        {
                            "case": label,
                            "p": p,
                            "c0": c0,
                            "kind": rec.kind,
                            "level": rec.level,
                            "orbit_level": rec.orbit_level,
                            "count": rec.count,
                            "multiplicity": rec.multiplicity,
                            "intersection": rec.intersection,
                            "proper": rec.proper,
                        }
                    )
                horizontal = cinv.horizontal_proper_intersection()
                vertical = cinv.vertical_contribution()
                total = cinv.total_proper()
                closed = inv.total_proper_closed_form(label, p, c0)
                footers[tag] = {
                    "horizontal_proper": horizontal,
                    "vertical": vertical,
                    "total_proper": total,
                    "closed_form": closed,
                }
                verdicts.append(
                    {"check": f"total-vs-closed-form {tag}", "pass": total == closed}
                )
                report = inv.displayed_corollary_report(label, p, c0)
                if label == "unr":
                    verdicts.append(
                        {"check": f"displayed-corollary {tag}", "pass": report["agree"]}
                    )
                elif not report["agree"]:
                    errata.append(
                        {
                            "code": "displayed-closed-form-mismatch",
                            "case": label,
                            "p": p,
                            "c0": c0,
                            "note": (
                                "displayed ramified proper-horizontal closed form gives "
                                f"{report['displayed']} but the assembled inventory total is "
                                f"{report['assembled']}; the assembled total is authoritative"
                            ),
                        }
                    )
                level_ok = all(
                    inv.per_level_proper_sum(label, s, p)
                    == inv.per_level_proper_sum_closed_form(label, s, p)
                    for s in range(0, c0 + 1)
                )
                verdicts.append({"check": f"per-level-sums {tag}", "pass": level_ok})
    _emit("inventory", config, rows, footers, verdicts, errata, fmt)
    return _exit_code(verdicts)


# ---------------------------------------------------------------------------
# recursion


def cmd_recursion(ns) -> int:
    file_cfg = _parse_config_file(ns.config) if ns.config else {}
    cases = _case_labels(_resolve(ns, "case", file_cfg, "both"))
    ps = _parse_int_list(_resolve(ns, "p", file_cfg, "3"))
    k = _resolve(ns, "k", file_cfg, 2)
    scale = _resolve(ns, "precision_scale", file_cfg, 1)
    dump = _resolve(ns, "dump", file_cfg, False)
    fmt = _resolve(ns, "format", file_cfg, "json")
    if k < 1 or scale < 1:
        raise ValueError("need k >= 1 and precision scale >= 1")
    config = {
        "case": cases,
        "p": ps,
        "k": k,
        "precision_scale": scale,
        "dump": dump,
        "format": fmt,
    }

    rows: List[Dict] = []
    footers: Dict = {}
    verdicts: List[Dict] = []
    for label in cases:
        for p in ps:
            tag = f"{label} p={p} k={k}"
            case = win.CaseDescriptor.from_label(label, p)
            one_ctx = win.one_variable_context(p)
            vert = win.solve_vertical_recursion(case, one_ctx)
            closed = win.closed_form_vertical_pair(case, one_ctx)
            verdicts.append(
                {"check": f"one-variable-fixed-point {tag}", "pass": vert.stabilized}
            )
            verdicts.append(
                {
                    "check": f"closed-form-match {tag}",
                    "pass": vert.pair == closed.normalized(),
                }
            )
            verdicts.append(
                {
                    "check": f"one-variable-commutation {tag}",
                    "pass": win.check_phi_commutation(vert.pair, two_variable=False),
                }
            )
            ctx = win.recursion_context(p, k, precision_scale=scale)
            sol = win.solve_thickened_recursion(case, k, ctx)
            verdicts.append(
                {
                    "check": f"tower-commutation {tag}",
                    "pass": win.check_phi_commutation(sol.pairs[k], two_variable=True),
                }
            )
            report = win.structure_check(sol, raise_on_failure=False)
            for clause in report.clauses:
                verdicts.append(
                    {"check": f"structure {tag} {clause.name}", "pass": clause.ok}
                )
            rows.append(
                {
                    "case": label,
                    "p": p,
                    "k": k,
                    "kind": "summary",
                    "series": None,
                    "x1": None,
                    "x2": None,
                    "alpha_terms": len(sol.alpha.coeffs),
                    "beta_terms": len(sol.beta.coeffs),
                    "denominator_exponent": max(k, 1),
                    "structure_ok": report.ok,
                }
            )
            if dump:
                for name, series in (("alpha", sol.alpha), ("beta", sol.beta)):
                    for (m1, m2), (ca, cb) in sorted(
                        series.coeffs.items(), key=lambda kv: (kv[0][1], kv[0][0])
                    ):
                        rows.append(
                            {
                                "case": label,
                                "p": p,
                                "k": k,
                                "kind": "coefficient",
                                "series": name,
                                "x1": m1,
                                "x2": m2,
                                "coeff_1": ca,
                                "coeff_w": cb,
                            }
                        )
            footers[tag] = {
                "alpha_terms": len(sol.alpha.coeffs),
                "beta_terms": len(sol.beta.coeffs),
                "structure_ok": report.ok,
            }
    _emit("recursion", config, rows, footers, verdicts, [], fmt)
    return _exit_code(verdicts)


# ---------------------------------------------------------------------------
# multiplicity


def cmd_multiplicity(ns) -> int:
    file_cfg = _parse_config_file(ns.config) if ns.config else {}
    cases = _case_labels(_resolve(ns, "case", file_cfg, "both"))
    ps = _parse_int_list(_resolve(ns, "p", file_cfg, "3"))
    c0s = _parse_int_list(_resolve(ns, "c0", file_cfg, "1..2"))
    scale = _resolve(ns, "precision_scale", file_cfg, 1)
    fmt = _resolve(ns, "format", file_cfg, "json")
    if scale < 1:
        raise ValueError("precision scale must be >= 1")
    config = {"case": cases, "p": ps, "c0": c0s, "precision_scale": scale, "format": fmt}

    rows: List[Dict] = []
    verdicts: List[Dict] = []
    all_match = True
    for label in cases:
        for p in ps:
            for c0 in c0s:
                if c0 < 1:
                    raise ValueError("multiplicity needs c0 >= 1")
                tag = f"{label} p={p} c0={c0}"
                case = win.CaseDescriptor.from_label(label, p)
                details = lengths.quotient_length_details(
                    case, c0, precision_scale=scale
                )
                closed = inv.vertical_multiplicity_closed_form(p, c0)
                match = details.length == closed
                all_match = all_match and match
                rows.append(
                    {
                        "case": label,
                        "p": p,
                        "c0": c0,
                        "snf_length": details.length,
                        "closed_form": closed,
                        "match": match,
                        "chain_radius": details.chain_radius,
                        "window_widened": details.retried,
                    }
                )
                verdicts.append({"check": f"multiplicity {tag}", "pass": match})
    footers = {"grid": {"cells": len(rows), "all_match": all_match}}
    _emit("multiplicity", config, rows, footers, verdicts, [], fmt)
    return _exit_code(verdicts)


# ---------------------------------------------------------------------------
# lattice


def cmd_lattice(ns) -> int:
    file_cfg = _parse_config_file(ns.config) if ns.config else {}
    ps = _parse_int_list(_resolve(ns, "p", file_cfg, "3"))
    fmt = _resolve(ns, "format", file_cfg, "json")
    subl = _resolve(ns, "sublattices", file_cfg, -1)
    superl = _resolve(ns, "superlattices", file_cfg, -1)
    appendix = _resolve(ns, "appendix", file_cfg, False)
    if subl < 0 and superl < 0 and not appendix:
        subl, superl, appendix = 2, 1, True
    config = {
        "p": ps,
        "sublattices": subl,
        "superlattices": superl,
        "appendix": appendix,
        "format": fmt,
    }

    rows: List[Dict] = []
    footers: Dict = {}
    verdicts: List[Dict] = []
    errata: List[Dict] = []
    for p in ps:
        if subl >= 0:
            module = lab.standard_rank2(p, prec=max(8, subl + 2))
            parities = []
            for k in range(subl + 1):
                found = lab.enumerate_stable_sublattices(module, k)
                verdicts.append(
                    {"check": f"sublattice-unique p={p} k={k}", "pass": len(found) == 1}
                )
                for lat in found:
                    exps = lat.pivot_exponents()
                    parity = lab.lie_action_parity(lat)
                    parities.append(parity)
                    rows.append(
                        {
                            "kind": "sublattice",
                            "p": p,
                            "k": k,
                            "count": len(found),
                            "exp_e0": exps[0],
                            "exp_f0": exps[1],
                            "parity": parity,
                        }
                    )
            alternates = all(
                parities[i] != parities[i + 1] for i in range(len(parities) - 1)
            )
            verdicts.append(
                {"check": f"sublattice-parity-alternates p={p}", "pass": alternates}
            )
            footers[f"sublattice-parities p={p}"] = ",".join(parities)
            errata.append({"code": "sublattice-display-swap", "p": p, "note": SUBLATTICE_ERRATUM})
        if superl >= 1:
            for s in range(1, superl + 1):
                for m in (1, 2):
                    if m == 1 and 2 * s > 4:
                        continue
                    if m == 2 and superl < 2:
                        continue
                    module = lab.tensor_rank4(p, prec=2 * (s + m) + 2)
                    found = lab.enumerate_stable_superlattices(module, s, m)
                    family = [
                        abd
                        for abd in lab.superlattice_family(s, m)
                    ]
                    verdicts.append(
                        {
                            "check": f"superlattice-family-count p={p} s={s} m={m}",
                            "pass": [lab.classify_superlattice(L) for L in found]
                            == family,
                        }
                    )
                    for lat in found:
                        a, b, delta = lab.classify_superlattice(lat)
                        rows.append(
                            {
                                "kind": "superlattice",
                                "p": p,
                                "s": s,
                                "m": m,
                                "a": a,
                                "b": b,
                                "delta": delta,
                            }
                        )
        if appendix:
            census = lab.hodge_lift_census(p)
            rows.append(
                {
                    "kind": "hodge-census",
                    "p": p,
                    "all": census["all"],
                    "order_stable": census["order_stable"],
                    "uniformizer_stable": census["uniformizer_stable"],
                    "both_stable": census["both_stable"],
                }
            )
            verdicts.append(
                {"check": f"hodge-lift-unique p={p}", "pass": census["both_stable"] == 1}
            )
    _emit("lattice", config, rows, footers, verdicts, errata, fmt)
    return _exit_code(verdicts)


# ---------------------------------------------------------------------------
# selfcheck


def _selfcheck_battery() -> List[Tuple[str, bool, str]]:
    checks: List[Tuple[str, bool, str]] = []

    def run(name: str, fn):
        try:
            detail = fn()
            checks.append((name, True, detail if isinstance(detail, str) else ""))
        except EndoliftError as exc:
            checks.append((name, False, f"{type(exc).__name__}: {exc}"))
        except AssertionError as exc:
            checks.append((name, False, str(exc)))

    def operator_sanity_all():
        for p in (3, 5):
            lab.operator_sanity(lab.standard_rank2(p))
            lab.operator_sanity(lab.ramified_rank2(p))
            lab.operator_sanity(lab.tensor_rank4(p))
        return "rank-2 x2, rank-4 at p=3,5"

    run("operator-sanity", operator_sanity_all)

    def sublattice_suite():
        module = lab.standard_rank2(3)
        want = ["psi", "psi-bar", "psi"]
        got = []
        for k in range(3):
            found = lab.enumerate_stable_sublattices(module, k)
            assert len(found) == 1, f"k={k}: {len(found)} lattices"
            got.append(lab.lie_action_parity(found[0]))
        assert got == want, f"parities {got}"
        return "unique per k<=2, parities " + ",".join(got)

    run("sublattices", sublattice_suite)

    def superlattice_suite():
        module = lab.tensor_rank4(3, prec=6)
        found = lab.enumerate_stable_superlattices(module, 1, 1)
        classes = [lab.classify_superlattice(L) for L in found]
        assert classes == [(0, 0, 1), (0, 1, 0), (1, 0, 0)], classes
        return "s=1 exhaustive: 3 lattices"

    run("superlattices", superlattice_suite)

    def descent_suite():
        for a in range(3):
            for b in range(3):
                for d in (0, 1):
                    if a + b + d <= 2:
                        lab.descend_superlattice(a, b, d, 3)
        return "all a+b+delta<=2 stable"

    run("descents", descent_suite)

    def census_suite():
        census = lab.hodge_lift_census(3)
        assert census["both_stable"] == 1, census
        assert census["all"] == 3**8, census
        return "both-stable count 1"

    run("hodge-census", census_suite)

    def inventory_suite():
        spots = {
            ("unr", 3, 1): 5,
            ("unr", 3, 2): 34,
            ("ram", 3, 1): 12,
        }
        for (label, p, c0), want in sorted(spots.items()):
            got = inv.total_proper_intersection(label, p, c0)
            assert got == want, f"{label} p={p} c0={c0}: {got} != {want}"
        return "spot totals 5/34/12"

    run("inventory-totals", inventory_suite)

    def multiplicity_suite():
        for label in ("unr", "ram"):
            got = lengths.vertical_multiplicity(label, 3, 1)
            assert got == 2, f"{label}: {got}"
        return "length 2 at c0=1, both cases"

    run("multiplicity", multiplicity_suite)

    def annihilator_suite():
        case = win.CaseDescriptor.from_label("unr", 3)
        assert lengths.annihilator_check(case, 1)
        return "membership table at (unr, 3, 1)"

    run("annihilator", annihilator_suite)

    def recursion_suite():
        for label in ("unr", "ram"):
            case = win.CaseDescriptor.from_label(label, 3)
            ctx = win.one_variable_context(3)
            vert = win.solve_vertical_recursion(case, ctx)
            assert vert.pair == win.closed_form_vertical_pair(case, ctx).normalized()
            sol = win.solve_thickened_recursion(case, 2)
            report = win.structure_check(sol, raise_on_failure=False)
            assert report.ok, [c.name for c in report.clauses if not c.ok]
        return "closed form + structure at k=2, both cases"

    run("recursion", recursion_suite)

    def integrality_suite():
        case = win.CaseDescriptor.from_label("unr", 3)
        prec = 6
        a, b, c, d = case.with_gamma(2, 1).param_scalars(prec)
        assert not win.integrality_predicate(a, b, c, d), "unit coefficient is integral?"
        a, b, c, d = case.with_gamma(2, 3).param_scalars(prec)
        assert win.integrality_predicate(a, b, c, d), "divisible coefficient not integral?"
        return "unit vs divisible generator coefficient"

    run("integrality", integrality_suite)

    return checks


def cmd_selfcheck(ns) -> int:
    file_cfg = _parse_config_file(ns.config) if ns.config else {}
    fmt = _resolve(ns, "format", file_cfg, "json")
    config = {"format": fmt}
    checks = _selfcheck_battery()
    rows = [{"check": n, "pass": ok, "detail": detail} for n, ok, detail in checks]
    verdicts = [{"check": n, "pass": ok} for n, ok, _ in checks]
    footers = {
        "summary": {
            "checks": len(checks),
            "passed": sum(1 for _, ok, _ in checks if ok),
        }
    }
    _emit("selfcheck", config, rows, footers, verdicts, [], fmt)
    return _exit_code(verdicts)


# ---------------------------------------------------------------------------
# entry point


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="endolift",
        description="Exact desk-scale sweeps over deformation-locus invariants.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    sub = subs.add_parser("inventory", help="component tables and totals")
    _add_common(sub)
    sub.set_defaults(fn=cmd_inventory)

    sub = subs.add_parser("recursion", help="tower solutions and structure checks")
    _add_common(sub)
    sub.set_defaults(fn=cmd_recursion)

    sub = subs.add_parser("multiplicity", help="measured vs closed-form lengths")
    _add_common(sub)
    sub.set_defaults(fn=cmd_multiplicity)

    sub = subs.add_parser("lattice", help="stable-lattice suites")
    _add_common(sub)
    sub.add_argument("--sublattices", type=int, default=None, metavar="K")
    sub.add_argument("--superlattices", type=int, default=None, metavar="S")
    sub.add_argument("--appendix", action="store_const", const=True, default=None)
    sub.set_defaults(fn=cmd_lattice)

    sub = subs.add_parser("selfcheck", help="fast cross-check battery")
    _add_common(sub)
    sub.set_defaults(fn=cmd_selfcheck)

    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    ns = parser.parse_args(argv)
    try:
        return ns.fn(ns)
    except (ValueError, NotAnOrder, OSError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (WindowExhausted, PrecisionExhausted, PrecisionTooLow) as exc:
        print(f"precision exhausted: {exc}", file=sys.stderr)
        return 3
    except (ConsistencyFailure, StructureViolation, ShapeViolation, StabilityFailure) as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1
    except EndoliftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
