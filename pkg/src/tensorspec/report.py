"""JSON and text rendering of profiles, products and reports.

Field names here are frozen: the golden files and the schemas below depend
on them.  Scalars are written with :func:`str` on
:class:`~tensorspec.exact.GaussianRational` (``"1/2-i"``) and enums as
their lowercase values.
"""

from __future__ import annotations

import json
from typing import Any

from .blocks import Agreement
from .exact import GaussianRational
from .matrix import AscentDescent, Drazin, ExactMatrix, MatrixReport
from .products import ProductResult
from .profile import (
    ClusterAtom,
    DerivedSets,
    IsolatedAtom,
    OperatorFlags,
    SpectralProfile,
)
from .sets import Family, SymbolicSet
from .transfer import TransferReport


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def family_json(f: Family) -> dict:
    return {"limit": str(f.limit), "r": str(f.r), "q": str(f.q)}


def set_json(s: SymbolicSet) -> dict:
    return {
        "points": [str(p) for p in s.points],
        "families": [family_json(f) for f in s.families],
    }


def atom_json(a) -> dict:
    if isinstance(a, IsolatedAtom):
        return {
            "type": "isolated",
            "point": str(a.point),
            "kind": a.kind.value,
            "rank": a.rank.value,
            "order": a.order,
        }
    assert isinstance(a, ClusterAtom)
    return {
        "type": "cluster",
        "limit": str(a.limit),
        "r": str(a.r),
        "q": str(a.q),
        "kind": a.seq_kind.value,
        "rank": a.seq_rank.value,
    }


def profile_json(p: SpectralProfile) -> dict:
    return {"atoms": [atom_json(a) for a in p.atoms]}


def flags_json(f: OperatorFlags) -> dict:
    return {
        "nilpotent": f.nilpotent,
        "quasinilpotent": f.quasinilpotent,
        "algebraic": f.algebraic,
        "drazin_invertible": f.drazin_invertible,
        "zero_in_spectrum": f.zero_in_spectrum,
        "zero_class": f.zero_class.value,
    }


SET_NAMES = ("sigma", "sigma_acc", "pi", "pi0", "iso_nonpole", "sigma_dr", "sigma_bw", "sigma_w")


def derived_json(d: DerivedSets) -> dict:
    return {name: set_json(getattr(d, name)) for name in SET_NAMES}


def classify_json(p: SpectralProfile, d: DerivedSets, f: OperatorFlags) -> dict:
    return {"profile": profile_json(p), "sets": derived_json(d), "flags": flags_json(f)}


def product_json(mode: str, res: ProductResult) -> dict:
    return {
        "mode": mode,
        "profile": profile_json(res.profile),
        "provenance": [{"point": pt, "rule": rule} for pt, rule in res.provenance],
    }


def transfer_json(r: TransferReport) -> dict:
    p = r.prediction
    return {
        "mode": r.mode.value,
        "scenario": r.scenario.value,
        "s_set": set_json(r.s_set),
        "sigma_bw_product": set_json(r.sigma_bw_product),
        "inclusion_holds": r.inclusion_holds,
        "reverse_inclusion_holds": r.reverse_inclusion_holds,
        "prediction": {
            "rule": p.rule,
            "applicable": p.applicable,
            "gated": p.gated,
            "predicted": p.predicted,
            "agrees": p.agrees,
        },
        "s_minus_bw": r.s_minus_bw,
        "zero_not_pole_product": r.zero_not_pole_product,
        "invertible_or_not_drazin": r.invertible_or_not_drazin,
        "weyl_hypotheses": r.weyl_hypotheses,
        "bw_equals_s": r.bw_equals_s,
        "weyl_identity_holds": r.weyl_identity_holds,
        "witnesses": set_json(r.witnesses),
        "product": profile_json(r.product),
    }


def agreement_json(a: Agreement, mode: str) -> dict:
    return {
        "mode": mode,
        "agree": a.equal,
        "oracle": profile_json(a.oracle),
        "calculus": profile_json(a.calculus),
        "only_oracle": [atom_json(x) for x in a.only_oracle],
        "only_calculus": [atom_json(x) for x in a.only_calculus],
    }


def matrix_json(m: ExactMatrix) -> dict:
    return {"rows": m.rows, "cols": m.cols, "entries": [[str(x) for x in row] for row in m.tolist()]}


def ascent_json(lam: GaussianRational, ad: AscentDescent) -> dict:
    return {
        "lambda": str(lam),
        "ascent": ad.ascent,
        "descent": ad.descent,
        "pole_order": ad.pole_order,
        "rank_chain": list(ad.rank_chain),
    }


def drazin_json(d: Drazin) -> dict:
    return {"index": d.index, "drazin_inverse": matrix_json(d.d)}


def matrix_report_json(r: MatrixReport) -> dict:
    return {
        "mode": r.mode,
        "ok": r.ok,
        "checks": dict(sorted(r.checks.items())),
        "failures": list(r.failures),
        "spectra": r.spectra,
        "pole_orders": r.pole_orders,
    }


def error_json(code: str, message: str) -> dict:
    return {"error": code, "message": message}


# -- text ----------------------------------------------------------------------


def atom_text(a) -> str:
    if isinstance(a, IsolatedAtom):
        order = f", order {a.order}" if a.order is not None else ""
        return f"{a.point}: {a.kind.value}, rank {a.rank.value}{order}"
    return (
        f"{a.family}: {a.seq_kind.value}, rank {a.seq_rank.value} each; "
        f"limit {a.limit}: acc"
    )


def profile_text(p: SpectralProfile) -> str:
    return "\n".join("  " + atom_text(a) for a in p.atoms)


def classify_text(p: SpectralProfile, d: DerivedSets, f: OperatorFlags) -> str:
    lines = ["profile:", profile_text(p), "sets:"]
    for name in SET_NAMES:
        lines.append(f"  {name} = {getattr(d, name)}")
    lines.append("flags:")
    for name, v in flags_json(f).items():
        lines.append(f"  {name}: {str(v).lower() if isinstance(v, bool) else v}")
    return "\n".join(lines) + "\n"


def product_text(mode: str, res: ProductResult) -> str:
    lines = [f"mode: {mode}", "profile:", profile_text(res.profile), "provenance:"]
    lines += [f"  {pt}: {rule}" for pt, rule in res.provenance]
    return "\n".join(lines) + "\n"


def transfer_text(r: TransferReport, prov: ProductResult | None = None) -> str:
    p = r.prediction
    if p.rule is None:
        pred = "none (scenario outside both equivalences)"
    else:
        gate = "" if p.gated else ", outside the asserted hypothesis set"
        pred = f"{p.rule}: predicted {str(p.predicted).lower()}, agrees {str(p.agrees).lower()}{gate}"
    lines = [
        f"mode: {r.mode.value}",
        f"scenario: {r.scenario.value}",
        f"S = {r.s_set}",
        f"sigma_bw(product) = {r.sigma_bw_product}",
        f"inclusion holds: {str(r.inclusion_holds).lower()}",
        f"witnesses: {r.witnesses}",
        f"reverse inclusion holds: {str(r.reverse_inclusion_holds).lower()}",
        f"prediction: {pred}",
        f"delta: {r.s_minus_bw}",
        f"weyl hypotheses: {str(r.weyl_hypotheses).lower()}",
        f"weyl identity holds: {str(r.weyl_identity_holds).lower()}",
        "product:",
        profile_text(r.product),
    ]
    if prov is not None:
        lines.append("provenance:")
        lines += [f"  {pt}: {rule}" for pt, rule in prov.provenance]
    return "\n".join(lines) + "\n"


# -- schemas ---------------------------------------------------------------------

_STR_LIST = {"type": "array", "items": {"type": "string"}}
_FAMILY = {
    "type": "object",
    "required": ["limit", "r", "q"],
    "properties": {"limit": {"type": "string"}, "r": {"type": "string"}, "q": {"type": "string"}},
    "additionalProperties": False,
}
SET_SCHEMA = {
    "type": "object",
    "required": ["points", "families"],
    "properties": {"points": _STR_LIST, "families": {"type": "array", "items": _FAMILY}},
    "additionalProperties": False,
}
_KIND = {"enum": ["pole", "iso_nonpole", "acc"]}
_RANK = {"enum": ["fin", "inf"]}
ATOM_SCHEMA = {
    "oneOf": [
        {
            "type": "object",
            "required": ["type", "point", "kind", "rank", "order"],
            "properties": {
                "type": {"const": "isolated"},
                "point": {"type": "string"},
                "kind": _KIND,
                "rank": _RANK,
                "order": {"type": ["integer", "null"], "minimum": 1},
            },
            "additionalProperties": False,
        },
        {
            "type": "object",
            "required": ["type", "limit", "r", "q", "kind", "rank"],
            "properties": {
                "type": {"const": "cluster"},
                "limit": {"type": "string"},
                "r": {"type": "string"},
                "q": {"type": "string"},
                "kind": _KIND,
                "rank": _RANK,
            },
            "additionalProperties": False,
        },
    ]
}
PROFILE_SCHEMA = {
    "type": "object",
    "required": ["atoms"],
    "properties": {"atoms": {"type": "array", "items": ATOM_SCHEMA}},
    "additionalProperties": False,
}
_BOOL = {"type": "boolean"}
_OPT_BOOL = {"type": ["boolean", "null"]}
TRANSFER_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "TransferReport",
    "type": "object",
    "required": [
        "mode", "scenario", "s_set", "sigma_bw_product", "inclusion_holds",
        "reverse_inclusion_holds", "prediction", "s_minus_bw", "zero_not_pole_product",
        "invertible_or_not_drazin", "weyl_hypotheses", "bw_equals_s",
        "weyl_identity_holds", "witnesses", "product",
    ],
    "properties": {
        "mode": {"enum": ["tensor", "elementary"]},
        "scenario": {
            "enum": [
                "both_algebraic", "A_algebraic_not_nilpotent", "B_algebraic_not_nilpotent",
                "both_non_algebraic", "nilpotent_factor",
            ]
        },
        "s_set": SET_SCHEMA,
        "sigma_bw_product": SET_SCHEMA,
        "inclusion_holds": _BOOL,
        "reverse_inclusion_holds": _BOOL,
        "prediction": {
            "type": "object",
            "required": ["rule", "applicable", "gated", "predicted", "agrees"],
            "properties": {
                "rule": {"enum": ["algebraic_factor", "non_algebraic", None]},
                "applicable": _BOOL,
                "gated": _BOOL,
                "predicted": _OPT_BOOL,
                "agrees": _OPT_BOOL,
            },
            "additionalProperties": False,
        },
        "s_minus_bw": {"enum": ["equal", "equal_plus_zero", "other"]},
        "zero_not_pole_product": _BOOL,
        "invertible_or_not_drazin": _BOOL,
        "weyl_hypotheses": _BOOL,
        "bw_equals_s": _BOOL,
        "weyl_identity_holds": _BOOL,
        "witnesses": SET_SCHEMA,
        "product": PROFILE_SCHEMA,
    },
    "additionalProperties": False,
}
PRODUCT_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ProductReport",
    "type": "object",
    "required": ["mode", "profile", "provenance"],
    "properties": {
        "mode": {"enum": ["tensor", "elementary"]},
        "profile": PROFILE_SCHEMA,
        "provenance": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["point", "rule"],
                "properties": {"point": {"type": "string"}, "rule": {"type": "string"}},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}
CLASSIFY_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "ClassifyReport",
    "type": "object",
    "required": ["profile", "sets", "flags"],
    "properties": {
        "profile": PROFILE_SCHEMA,
        "sets": {
            "type": "object",
            "required": list(SET_NAMES),
            "properties": {k: SET_SCHEMA for k in SET_NAMES},
            "additionalProperties": False,
        },
        "flags": {
            "type": "object",
            "required": [
                "nilpotent", "quasinilpotent", "algebraic", "drazin_invertible",
                "zero_in_spectrum", "zero_class",
            ],
            "properties": {
                "nilpotent": _BOOL,
                "quasinilpotent": _BOOL,
                "algebraic": _BOOL,
                "drazin_invertible": _BOOL,
                "zero_in_spectrum": _BOOL,
                "zero_class": {"enum": ["absent", "pole", "iso_nonpole", "acc"]},
            },
            "additionalProperties": False,
        },
    },
    "additionalProperties": False,
}
ERROR_SCHEMA = {
    "$schema": "https://json-schema.org/draft/2020-12/schema",
    "title": "Error",
    "type": "object",
    "required": ["error", "message"],
    "properties": {"error": {"type": "string"}, "message": {"type": "string"}},
    "additionalProperties": False,
}
