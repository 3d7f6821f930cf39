"""Finite local rings: is the ring a field versus injectivity of the
comparison map of its quantale of ideals."""

from __future__ import annotations

from .coexp import tangent_report
from .presentation import canonical_presentation
from .rings import cotangent_dim, ideal_quantale, maximal_ideals, primary_pairs, local_rings


def conjecture_row(R):
    IQ = ideal_quantale(R)
    P = canonical_presentation(IQ.quantale, name="idl")
    report = tangent_report(P)
    (m,) = maximal_ideals(R)
    field = R.is_field
    return {
        "ring": R.label,
        "order": len(R),
        "residue_field": len(R) // len(m.members),
        "is_field": field,
        "cotangent_dim": cotangent_dim(R),
        "ideals": len(IQ.ideals),
        "primary_pairs": len(primary_pairs(R)),
        "locD": len(report.locD.quantale),
        "locS": len(report.locS.quantale),
        "injective": report.injective,
        "agree": field == report.injective,
    }


def conjecture_table(max_order=16):
    """One row per local ring of order at most max_order. Agreement is
    reported per row; nothing here asserts it."""
    rows = [conjecture_row(R) for R in local_rings(max_order)]
    return {
        "rows": rows,
        "rings": len(rows),
        "agreements": sum(r["agree"] for r in rows),
    }
