"""JSON input parsing and deterministic output rendering.

Input files carry groups, homomorphisms, degrees, bundles, and linearized
actions; a "group" field may be an inline object or a path string resolved
relative to the referencing file. All rationals parse from ints or "p/q"
strings and render back as canonical strings; floats are rejected.
"""
from __future__ import annotations

import json
import os
from fractions import Fraction
from typing import Any

from .bundles import make_levi_bundle, make_split_bundle
from .changegroup import HomData, RationalDegree, make_degree, make_hom
from .errors import ValidationError
from .kirwan import LinearizedAction, make_action
from .linalg import QMat, QVec, format_rat, qmat, qvec, rat
from .rootdata import (
    ComponentAction,
    GroupData,
    InvariantNorm,
    invariant_norm,
    make_group,
    make_root_datum,
)

__all__ = [
    "load_group",
    "load_hom",
    "load_degree",
    "load_bundle",
    "load_action",
    "parse_group",
    "render_rat",
    "render_vec",
    "render_mat",
    "dumps",
]


def _fail(where: str, msg: str) -> None:
    raise ValidationError(f"{where}: {msg}")


def _read_json(path: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"{path}: cannot read file ({exc})") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: not valid JSON ({exc})") from exc


def _expect_list(obj: Any, where: str) -> list:
    if not isinstance(obj, list):
        _fail(where, "expected a JSON array")
    return obj


def _parse_vec(obj: Any, where: str) -> QVec:
    try:
        return qvec(_expect_list(obj, where))
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _parse_mat(obj: Any, where: str) -> QMat:
    rows = _expect_list(obj, where)
    try:
        return qmat([_expect_list(r, where) for r in rows])
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def parse_group(obj: Any, where: str = "group") -> GroupData:
    if not isinstance(obj, dict):
        _fail(where, "group description must be a JSON object")
    if "rank" not in obj or not isinstance(obj["rank"], int):
        _fail(where, "missing or non-integer 'rank'")
    rank = obj["rank"]
    roots = [_parse_vec(r, f"{where}.roots") for r in _expect_list(obj.get("roots", []), f"{where}.roots")]
    coroots = [_parse_vec(c, f"{where}.coroots") for c in _expect_list(obj.get("coroots", []), f"{where}.coroots")]
    base = obj.get("base")
    if base is not None:
        base = _expect_list(base, f"{where}.base")
        if not all(isinstance(b, int) and not isinstance(b, bool) for b in base):
            _fail(f"{where}.base", "base must be a list of root indices")
    components = None
    if "pi0" in obj and obj["pi0"] is not None:
        pi0 = obj["pi0"]
        if not isinstance(pi0, dict):
            _fail(f"{where}.pi0", "must be an object")
        labels = _expect_list(pi0.get("elements"), f"{where}.pi0.elements")
        if not all(isinstance(l, str) for l in labels):
            _fail(f"{where}.pi0.elements", "labels must be strings")
        raw_table = _expect_list(pi0.get("table"), f"{where}.pi0.table")
        table = []
        for i, row in enumerate(raw_table):
            row = _expect_list(row, f"{where}.pi0.table[{i}]")
            idx_row = []
            for v in row:
                if isinstance(v, str):
                    if v not in labels:
                        _fail(f"{where}.pi0.table", f"unknown label {v!r}")
                    idx_row.append(labels.index(v))
                elif isinstance(v, int) and not isinstance(v, bool):
                    idx_row.append(v)
                else:
                    _fail(f"{where}.pi0.table", f"entry {v!r} is neither label nor index")
            table.append(tuple(idx_row))
        action = pi0.get("action")
        if not isinstance(action, dict):
            _fail(f"{where}.pi0.action", "must map labels to matrices")
        matrices = []
        for lab in labels:
            if lab not in action:
                _fail(f"{where}.pi0.action", f"missing matrix for label {lab!r}")
            matrices.append(_parse_mat(action[lab], f"{where}.pi0.action[{lab!r}]"))
        components = ComponentAction(tuple(labels), tuple(table), tuple(matrices))
    try:
        datum = make_root_datum(rank, roots, coroots)
        return make_group(datum, components, base)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def _group_field(obj: Any, where: str, basedir: str) -> GroupData:
    if isinstance(obj, str):
        path = obj if os.path.isabs(obj) else os.path.join(basedir, obj)
        return parse_group(_read_json(path), path)
    return parse_group(obj, where)


def load_group(path: str) -> GroupData:
    return parse_group(_read_json(path), path)


def load_hom(path: str, cap: int) -> HomData:
    obj = _read_json(path)
    if not isinstance(obj, dict):
        _fail(path, "homomorphism file must be a JSON object")
    basedir = os.path.dirname(os.path.abspath(path))
    for key in ("source", "target", "tau"):
        if key not in obj:
            _fail(path, f"missing '{key}'")
    source = _group_field(obj["source"], f"{path}.source", basedir)
    target = _group_field(obj["target"], f"{path}.target", basedir)
    tau = _parse_mat(obj["tau"], f"{path}.tau")
    phi0 = obj.get("phi0")
    if phi0 is not None and not isinstance(phi0, dict):
        _fail(path, "'phi0' must map source labels to target labels")
    try:
        return make_hom(source, target, tau, phi0, cap=cap)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def parse_degree(obj: Any, group: GroupData, where: str, cap: int) -> RationalDegree:
    if not isinstance(obj, dict) or "d" not in obj:
        _fail(where, "degree must be an object with 'd'")
    subgroup = obj.get("F")
    if subgroup is None:
        subgroup = [group.components.labels[group.components.identity_index()]]
    subgroup = _expect_list(subgroup, f"{where}.F")
    d = _parse_vec(obj["d"], f"{where}.d")
    try:
        return make_degree(group, subgroup, d, cap)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def load_degree(path: str, group: GroupData, cap: int) -> RationalDegree:
    return parse_degree(_read_json(path), group, path, cap)


def load_bundle(path: str, cap: int):
    obj = _read_json(path)
    if not isinstance(obj, dict):
        _fail(path, "bundle file must be a JSON object")
    basedir = os.path.dirname(os.path.abspath(path))
    kind = obj.get("kind")
    if "group" not in obj:
        _fail(path, "missing 'group'")
    group = _group_field(obj["group"], f"{path}.group", basedir)
    if kind == "split":
        if "delta" not in obj:
            _fail(path, "split bundle needs 'delta'")
        try:
            return make_split_bundle(group, _parse_vec(obj["delta"], f"{path}.delta"))
        except ValidationError as exc:
            raise ValidationError(f"{path}: {exc}") from exc
    if kind == "levi":
        for key in ("lambda", "inner"):
            if key not in obj:
                _fail(path, f"levi bundle needs '{key}'")
        lam = _parse_vec(obj["lambda"], f"{path}.lambda")
        inner = obj["inner"]
        if not isinstance(inner, dict) or "d" not in inner:
            _fail(path, "'inner' must be a degree object with 'd'")
        subgroup = inner.get("F")
        inner_ss = obj.get("inner_semistable")
        if inner_ss is not None and not isinstance(inner_ss, bool):
            _fail(path, "'inner_semistable' must be a boolean when present")
        try:
            return make_levi_bundle(
                group,
                lam,
                subgroup if subgroup is not None
                else [group.components.labels[group.components.identity_index()]],
                _parse_vec(inner["d"], f"{path}.inner.d"),
                inner_ss,
                cap,
            )
        except ValidationError as exc:
            raise ValidationError(f"{path}: {exc}") from exc
    _fail(path, "'kind' must be \"split\" or \"levi\"")


def parse_norm(obj: Any, group: GroupData, where: str, cap: int) -> InvariantNorm:
    """An explicit matrix is a positive definite seed, averaged over the Weyl
    group; averaging is the identity on forms that are already invariant."""
    if obj is None or obj == "average-identity":
        return invariant_norm(group, QMat.identity(group.rank), cap)
    try:
        return invariant_norm(group, _parse_mat(obj, where), cap)
    except ValidationError as exc:
        raise ValidationError(f"{where}: {exc}") from exc


def load_action(path: str, cap: int) -> LinearizedAction:
    obj = _read_json(path)
    if not isinstance(obj, dict):
        _fail(path, "action file must be a JSON object")
    basedir = os.path.dirname(os.path.abspath(path))
    if "group" not in obj or "weights" not in obj:
        _fail(path, "action file needs 'group' and 'weights'")
    group = _group_field(obj["group"], f"{path}.group", basedir)
    weights = [
        _parse_vec(w, f"{path}.weights")
        for w in _expect_list(obj["weights"], f"{path}.weights")
    ]
    shift = obj.get("shift")
    shift_vec = (
        _parse_vec(shift, f"{path}.shift") if shift is not None else QVec.zero(group.rank)
    )
    norm = parse_norm(obj.get("norm"), group, f"{path}.norm", cap)
    try:
        return make_action(group, weights, shift_vec, norm, cap)
    except ValidationError as exc:
        raise ValidationError(f"{path}: {exc}") from exc


def render_rat(q: Fraction) -> str:
    return format_rat(q)


def render_vec(v: QVec) -> list[str]:
    return [format_rat(a) for a in v.entries]


def render_mat(m: QMat) -> list[list[str]]:
    return [[format_rat(m.at(i, j)) for j in range(m.cols)] for i in range(m.rows)]


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"
