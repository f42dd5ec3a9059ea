"""Machine-readable analysis report for a single datum.

Field ordering is fixed so identical inputs serialize byte-identically.
Branch indices in the report are 1-based.
"""

from __future__ import annotations

import json

from ._version import __version__
from .datum import EquisingularDatum, require_valid, serialize_datum
from .fibre import component_monodromy, divide_by_gcd, fibre_summary
from .intlinalg import IntMatrix, smith_normal_form
from .invariants import (
    beta,
    boundary2_components,
    check_upper_bound,
    classify_xr,
    transversal_data,
    vertical_shift,
)
from .network import build_network


def build_analysis(datum: EquisingularDatum, include_snf: bool = False):
    """Assemble the full report; returns (report dict, snf debug lines)."""
    require_valid(datum)
    summary = fibre_summary(datum)
    mono = component_monodromy(datum)
    trans = transversal_data(datum)
    d, reduced = divide_by_gcd(datum)
    xr = classify_xr(datum)

    network = []
    for node in build_network(datum):
        if node.kind == "self":
            network.append({
                "kind": "self",
                "branch": node.i + 1,
                "p": node.p,
                "q": node.q,
                "copies": node.copies,
            })
        else:
            network.append({
                "kind": "cross",
                "branches": [node.i + 1, node.j + 1],
                "p": node.p,
                "q": node.q,
                "copies": node.copies,
            })

    transversal = {
        "branches": [
            {"branch": e.branch + 1, "fibre_size": e.fibre_size, "mu_perp": e.mu_perp}
            for e in trans.branches
        ],
        "total_points": trans.total_points,
    }

    snf_lines = []
    if trans.branches:
        beta_rep = beta(datum)
        beta_section = {
            "value": beta_rep.beta,
            "b1": beta_rep.b1,
            "b0": beta_rep.b0,
            "total_transversal_points": beta_rep.total_transversal_points,
            "singular_branch_count": beta_rep.singular_branch_count,
            "criteria": {
                "C1": beta_rep.c1_beta_zero,
                "C2": beta_rep.c2_chi_form,
                "C3": beta_rep.c3_homology_form,
            },
            "verdict_bobadilla": beta_rep.verdict_bobadilla,
        }
        b2 = boundary2_components(datum)
        vertical = [
            {
                "branch": e.branch + 1,
                "k": e.shift,
                "components": e.components,
                "coker_free_rank": e.coker.free_rank,
                "coker_torsion": list(e.coker.torsion),
                "chain_ok": e.chain_ok,
            }
            for e in b2.branches
        ]
        ub = check_upper_bound(datum)
        upper_bound = {
            "hypothesis": ub.hypothesis,
            "cokernels_free": ub.cokernels_free,
            "shifts_identity": ub.shifts_identity,
            "conclusion_holds": ub.conclusion_holds,
        }
        if include_snf:
            for e in b2.branches:
                m = datum.branches[e.branch].multiplicity
                mono_i = vertical_shift(datum, e.branch)
                a_minus_i = IntMatrix.from_rows([
                    [mono_i.permutation_matrix.entries[a][b] - (1 if a == b else 0)
                     for b in range(m)]
                    for a in range(m)
                ])
                diag = smith_normal_form(a_minus_i).diagonal()
                snf_lines.append(
                    f"branch {e.branch + 1}: snf diag(A - I) = {list(diag)}"
                )
    else:
        beta_section = None
        vertical = []
        upper_bound = None

    report = {
        "datum": serialize_datum(datum),
        "network": network,
        "fibre": {
            "d": summary.d,
            "b0": summary.b0,
            "b1": summary.b1,
            "chi": summary.chi,
            "reduced": {"d": d, "datum": serialize_datum(reduced)},
        },
        "monodromy": {"cycle_type": list(mono.cycle_type)},
        "transversal": transversal,
        "beta": beta_section,
        "vertical": vertical,
        "upper_bound": upper_bound,
        "xr_verdict": {
            "is_xr": xr.is_power_of_smooth,
            "b1_zero": xr.b1_zero,
            "exponent": xr.exponent,
        },
        "version": __version__,
    }
    return report, snf_lines


def report_to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"
