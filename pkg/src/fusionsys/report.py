"""Report assembly: one JSON document per (group, prime) analysis.

A report runs the full pipeline: build the group, compute its fusion
system, classify the lattice, check saturation, compute the p'-quotient
and the minimal subsystem with its verification obligations, certify
simplicity, exercise the weakly-closed shortcut when a qualifying subgroup
exists (including the H^1 rigidity computation on its kernel automizer),
and compare everything against the arithmetic predictor.

All group orders are serialized as decimal strings.  Timing is recorded
only when requested, so default reports are byte-identical across runs
with the same seed and flags.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

from . import catalog, classify as classify_mod, tables
from .cohomology import gmodule_from_perm_group, h1
from .errors import FusionError
from .fusion import CLOSURE_CAP, FusionSystem, group_fusion
from .indexp import (PPrimeAnalysis, find_weakly_closed_abelian,
                     find_weakly_closed_any)
from .lattice import LATTICE_CAP
from .saturation import is_saturated

SCHEMA_VERSION = 1

SURVEY_ROWS = [
    ("A7", 3), ("A8", 3), ("A9", 3), ("A10", 3), ("A11", 3), ("A12", 3),
    ("M11", 2), ("M11", 3), ("M12", 2), ("M12", 3),
    ("A6", 2), ("PSU4(2)", 3), ("PSp4(3)", 3), ("Sp6(2)", 3),
]


@dataclass
class ReportOptions:
    seed: int = 0
    lattice_cap: int = LATTICE_CAP
    closure_cap: int = CLOSURE_CAP
    include_timing: bool = False
    catalog_path: str | None = None
    deep: bool = False  # also run the centralizer-subsystem bounds

    def cache_key_fields(self) -> dict:
        return {"seed": self.seed, "lattice_cap": self.lattice_cap,
                "closure_cap": self.closure_cap, "deep": self.deep,
                "catalog_path": self.catalog_path}


def _homocyclic_basis(lat, a_id, p):
    """Basis of a homocyclic abelian subgroup, or None."""
    sg = lat.subgroups[a_id]
    if not sg.is_abelian:
        return None
    exponent = max(lat.elem_order[e] for e in sg.elems)
    basis = []
    span = {0}
    for e in sg.elems:
        if lat.elem_order[e] != exponent or e in span:
            continue
        new_span = set(span)
        ok = True
        x = e
        for _ in range(exponent - 1):
            layer = [lat.mult[s][x] for s in span]
            if any(v in new_span for v in layer):
                ok = False
                break
            new_span.update(layer)
            x = lat.mult[x][e]
        if ok and len(new_span) == len(span) * exponent:
            basis.append(e)
            span = new_span
        if len(span) == sg.order:
            break
    if len(span) != sg.order:
        return None
    return basis, exponent


def _rigidity_h1(F: FusionSystem, E1: FusionSystem, a_id: int):
    """H^1 of the minimal-subsystem automizer acting on a homocyclic A."""
    lat = F.lattice
    basis_info = _homocyclic_basis(lat, a_id, F.p)
    if basis_info is None:
        return None
    basis, exponent = basis_info
    ell = 0
    e = exponent
    while e > 1:
        e //= F.p
        ell += 1
    rank = len(basis)
    mod = F.p**ell
    # coordinates of every element of A
    import itertools
    coords = {}
    for tup in itertools.product(range(mod), repeat=rank):
        x = 0
        for b, c in zip(basis, tup):
            for _ in range(c):
                x = lat.mult[x][b]
        coords[x] = tup
    if len(coords) != lat.subgroups[a_id].order:
        return None
    aut = E1.aut_position_group(a_id)
    sg = lat.subgroups[a_id]

    def matrix_of(gperm):
        cols = []
        for b in basis:
            img = sg.elems[gperm(sg.pos_of[b])]
            cols.append(coords[img])
        return [[cols[j][i] % mod for j in range(rank)] for i in range(rank)]

    M = gmodule_from_perm_group(aut, F.p, ell, rank, matrix_of)
    invs = h1(M)
    return {
        "automizer_order": aut.order(),
        "module": f"(C_{mod})^{rank}",
        "h1_invariants": list(invs),
        "rigid": not invs,
    }


def build_fusion(label: str, p: int, options: ReportOptions) -> FusionSystem:
    G = catalog.build(label, catalog_path=options.catalog_path)
    return group_fusion(G, p, lattice_cap=options.lattice_cap,
                        closure_cap=options.closure_cap, label=label,
                        seed=options.seed)


def build_report(label: str, p: int, options: ReportOptions | None = None) -> dict:
    options = options or ReportOptions()
    timings = {}
    t0 = time.time()
    F = build_fusion(label, p, options)
    timings["fusion"] = round(time.time() - t0, 3)
    return report_for_system(F, label, p, options, timings)


def report_for_system(F: FusionSystem, label: str, p: int,
                      options: ReportOptions | None = None,
                      timings: dict | None = None,
                      analysis: PPrimeAnalysis | None = None) -> dict:
    options = options or ReportOptions()
    timings = timings if timings is not None else {}
    lat = F.lattice
    t0 = time.time()
    cl = analysis.classified if analysis is not None else classify_mod.classify(F)
    timings["classify"] = round(time.time() - t0, 3)

    t0 = time.time()
    sat_ok, sat_report = is_saturated(F)
    timings["saturation"] = round(time.time() - t0, 3)

    if analysis is None:
        analysis = PPrimeAnalysis(F, classified=cl, closure_cap=options.closure_cap)
    t0 = time.time()
    gamma_rep = analysis.gamma_report()
    timings["gamma"] = round(time.time() - t0, 3)
    t0 = time.time()
    cert = analysis.simplicity_certificate()
    timings["certificate"] = round(time.time() - t0, 3)

    sylow_abelian = lat.subgroups[lat.full_id].is_abelian

    shortcut = None
    rigidity = None
    a_id = find_weakly_closed_abelian(F, cl)
    a_abelian = a_id is not None
    if a_id is None:
        a_id = find_weakly_closed_any(F, cl)
    if not sylow_abelian:
        t0 = time.time()
        theta = analysis.theta_via_weakly_closed(a_id)
        shortcut = {
            "A": a_id,
            "A_order": str(lat.subgroups[a_id].order),
            "A_abelian": a_abelian,
            "A_exponent": lat.exponent_of(a_id),
            "aut_A_order": F.aut_order(a_id),
            "gamma_via_A": theta.gamma_order,
            "fast_path": theta.fast_path,
            "kernel_order": theta.kernel_order,
            "agrees_with_gamma": theta.agrees_with_gamma,
        }
        if options.deep and a_abelian:
            X = analysis.fusion_stable_core(a_id)
            center_mask = 0
            for e in lat.center_elems:
                center_mask |= 1 << e
            xz = [e for e in X if (center_mask >> e) & 1]
            if len(xz) > 1:
                z_id = lat.generated_subgroup_id(xz)
                witness = analysis.gamma_bounds(a_id, z_id)
                shortcut["bounds"] = {
                    "Z": z_id, "lower": witness.lower, "upper": witness.upper,
                    "K_order": witness.K_order, "K0_order": witness.K0_order,
                }
        if a_abelian:
            rigidity = _rigidity_h1(F, analysis.e1, a_id)
        timings["shortcut"] = round(time.time() - t0, 3)

    try:
        prediction = tables.predict(label, p).to_dict()
    except FusionError:
        prediction = None

    comparison = _compare(prediction, gamma_rep, cert, sylow_abelian)

    report = {
        "schema_version": SCHEMA_VERSION,
        "label": label,
        "prime": p,
        "group_order": str(F.group.order()) if F.group is not None else None,
        "sylow_order": str(lat.n),
        "sylow_degree": lat.S.degree,
        "sylow_abelian": sylow_abelian,
        "counts": {
            "subgroups": len(lat),
            "f_classes": len(F.classes()),
            "centric": len(cl.centric_ids()),
            "centric_radical": len(cl.centric_radical_ids()),
        },
        "flags_summary": cl.summary(),
        "gamma": {
            "order": gamma_rep.gamma_order,
            "structure": gamma_rep.structure,
            "aut_fs_order": gamma_rep.aut_fs_order,
            "aut0_order": gamma_rep.aut0_order,
            "generator_labels": gamma_rep.generator_labels,
            "opprime_aut_orders": {str(k): v
                                   for k, v in sorted(gamma_rep.opprime_aut_orders.items())},
        },
        "saturation": {
            "verdict": sat_report.verdict,
            "failures": [
                {"axiom": f.axiom, "class_rep": f.class_rep, "subgroup": f.subgroup,
                 "detail": f.detail}
                for f in sat_report.failures],
        },
        "simplicity": {"verdict": cert.verdict, "evidence": cert.evidence,
                       "factorization": cert.factorization},
        "weakly_closed_shortcut": shortcut,
        "rigidity_h1": rigidity,
        "predictor": prediction,
        "comparison": comparison,
    }
    if options.include_timing:
        report["timing_seconds"] = timings
    return report


def _compare(prediction, gamma_rep, cert, sylow_abelian) -> dict:
    """Field-by-field comparison against the predictor's commitments."""
    if prediction is None:
        return {"match": True, "checked": {}, "note": "no prediction available"}
    checked = {}
    if prediction.get("abelian_sylow") is not None:
        checked["abelian_sylow"] = (prediction["abelian_sylow"] == sylow_abelian)
    if prediction.get("gamma_order") is not None:
        checked["gamma_order"] = (prediction["gamma_order"] == gamma_rep.gamma_order)
        if prediction.get("gamma_structure") == "cyclic":
            structure = gamma_rep.structure
            cyclic = (structure["order"] == 1
                      or (structure["abelian"]
                          and structure.get("invariants") == [structure["order"]]))
            checked["gamma_cyclic"] = cyclic
    if prediction.get("simple") is not None:
        if cert.verdict == "inconclusive":
            checked["simple"] = False
        else:
            checked["simple"] = (cert.verdict == "simple") == prediction["simple"]
    return {"match": all(checked.values()), "checked": checked}


def run_survey(options: ReportOptions | None = None, rows=None,
               cache=None) -> dict:
    """The built-in classification survey; exit code 0 iff zero mismatches."""
    options = options or ReportOptions()
    rows = rows if rows is not None else SURVEY_ROWS
    out_rows = []
    mismatches = 0
    for label, p in rows:
        report = None
        if cache is not None:
            report = cache.load(label, p, options)
        if report is None:
            report = build_report(label, p, options)
            if cache is not None:
                cache.store(label, p, options, report)
        pred = report.get("predictor") or {}
        row = {
            "label": label,
            "prime": p,
            "gamma": report["gamma"]["order"],
            "predicted_gamma": pred.get("gamma_order"),
            "simple": report["simplicity"]["verdict"],
            "predicted_simple": pred.get("simple"),
            "sylow_abelian": report["sylow_abelian"],
            "match": report["comparison"]["match"],
        }
        if not row["match"]:
            mismatches += 1
        out_rows.append(row)
    return {"rows": out_rows, "mismatches": mismatches}


def survey_text(result: dict) -> str:
    header = f"{'group':>9} {'p':>2} {'|Gamma|':>8} {'pred':>5} {'simple?':>12} {'pred':>6} {'match':>6}"
    lines = [header, "-" * len(header)]
    for row in result["rows"]:
        pg = row["predicted_gamma"]
        ps = row["predicted_simple"]
        lines.append(
            f"{row['label']:>9} {row['prime']:>2} {row['gamma']:>8} "
            f"{('-' if pg is None else pg):>5} {row['simple']:>12} "
            f"{('-' if ps is None else str(ps)):>6} {str(row['match']):>6}")
    lines.append(f"mismatches: {result['mismatches']}")
    return "\n".join(lines)
