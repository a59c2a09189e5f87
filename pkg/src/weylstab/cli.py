"""Command-line front end.

One subcommand per decision procedure; files in, deterministic text/JSON/DOT
out. Exit codes: 0 success, 1 invalid input, 2 cap exceeded, 3 unsupported
regime (nonabelian identity component where a torus is required).
"""
from __future__ import annotations

import json
import sys
from typing import Callable, Optional

import click

from .bundles import (
    SplitBundle,
    canonical_destabilizer,
    levi_induced_semistable,
    split_semistable,
)
from .changegroup import destabilizing_witness, is_adapted, push_degree
from .errors import (
    CapExceeded,
    InvariantBroken,
    NonAbelianIdentityComponent,
    ValidationError,
)
from .kirwan import (
    DEFAULT_PATTERN_CAP,
    DEFAULT_SUBSET_CAP,
    StratumData,
    candidate_strata,
    instability,
    is_polystable,
    is_semistable,
    is_stable,
    stratify_supports,
    verify_recursion,
)
from .linalg import DEFAULT_CLOSURE_CAP, QMat, QVec, format_rat, qvec
from .rootdata import (
    central_cocharacters,
    parabolic,
    rational_characters,
    trace_form,
    weyl_group,
)
from .schemas import (
    dumps,
    load_action,
    load_bundle,
    load_degree,
    load_group,
    load_hom,
    parse_norm,
    render_mat,
    render_rat,
    render_vec,
)


def _vec_text(v: QVec) -> str:
    return "(" + ", ".join(format_rat(a) for a in v.entries) + ")"


def _mat_text(m: QMat) -> str:
    rows = [
        "[" + ", ".join(format_rat(m.at(i, j)) for j in range(m.cols)) + "]"
        for i in range(m.rows)
    ]
    return "[" + ", ".join(rows) + "]"


def _ints_text(idx) -> str:
    return "[" + ", ".join(str(i) for i in idx) + "]"


def _parse_vec_arg(raw: str, what: str) -> QVec:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError:
        obj = [p.strip() for p in raw.split(",") if p.strip()]
    if not isinstance(obj, list):
        raise ValidationError(f"{what} must be a list of rationals")
    try:
        return qvec(obj)
    except ValidationError as exc:
        raise ValidationError(f"{what}: {exc}") from exc


def _parse_support_arg(raw: str) -> list[int]:
    try:
        obj = json.loads(raw)
    except json.JSONDecodeError:
        obj = [p.strip() for p in raw.split(",") if p.strip()]
    out = []
    for v in obj if isinstance(obj, list) else [obj]:
        try:
            out.append(int(v))
        except (TypeError, ValueError):
            raise ValidationError(f"support entry {v!r} is not an index") from None
    return out


def _emit(text: str) -> None:
    click.echo(text, nl=False)


def _run(body: Callable[[], str]) -> None:
    try:
        text = body()
    except CapExceeded as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(2)
    except NonAbelianIdentityComponent as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(3)
    except (ValidationError, InvariantBroken) as exc:
        click.echo(f"error: {exc}", err=True)
        sys.exit(1)
    _emit(text)


_format_opt = click.option(
    "--format", "fmt", type=click.Choice(["text", "json"]), default="text",
    help="Output format.",
)
_cap_closure_opt = click.option(
    "--cap-closure", type=int, default=DEFAULT_CLOSURE_CAP, show_default=True,
    help="Bound on generated group orders.",
)
_cap_subsets_opt = click.option(
    "--cap-subsets", type=int, default=None,
    help="Bound on enumerated subsets and support patterns.",
)


@click.group()
@click.version_option(package_name="weylstab")
def main() -> None:
    """Exact Weyl-group, semistability, and stratification computations."""


@main.command("weyl")
@click.option("--group", "group_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def weyl_cmd(group_path: str, fmt: str, cap_closure: int) -> None:
    """Order and generators of the full Weyl group."""
    def body() -> str:
        g = load_group(group_path)
        w = weyl_group(g, cap_closure)
        if fmt == "json":
            return dumps({
                "order": w.order,
                "generators": [render_mat(m) for m in w.generators],
            })
        lines = [f"order: {w.order}", "generators:"]
        lines.extend(f"  {_mat_text(m)}" for m in w.generators)
        return "\n".join(lines) + "\n"
    _run(body)


@main.command("invariants")
@click.option("--group", "group_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def invariants_cmd(group_path: str, fmt: str, cap_closure: int) -> None:
    """Invariant character and cocharacter subspaces."""
    def body() -> str:
        g = load_group(group_path)
        chars = rational_characters(g, cap_closure)
        cochars = central_cocharacters(g, cap_closure)
        if fmt == "json":
            return dumps({
                "rational_characters": [render_vec(v) for v in chars.basis_vectors()],
                "central_cocharacters": [render_vec(v) for v in cochars.basis_vectors()],
            })
        lines = [f"rational characters (dim {chars.dim}):"]
        lines.extend(f"  {_vec_text(v)}" for v in chars.basis_vectors())
        lines.append(f"central cocharacters (dim {cochars.dim}):")
        lines.extend(f"  {_vec_text(v)}" for v in cochars.basis_vectors())
        return "\n".join(lines) + "\n"
    _run(body)


@main.command("trace-form")
@click.option("--group", "group_path", required=True, type=click.Path())
@_format_opt
def trace_form_cmd(group_path: str, fmt: str) -> None:
    """Gram matrix of the trace form on the cocharacter space."""
    def body() -> str:
        g = load_group(group_path)
        a = trace_form(g)
        if fmt == "json":
            return dumps({"gram": render_mat(a)})
        return "\n".join(
            "[" + ", ".join(format_rat(a.at(i, j)) for j in range(a.cols)) + "]"
            for i in range(a.rows)
        ) + "\n"
    _run(body)


@main.command("parabolic")
@click.option("--group", "group_path", required=True, type=click.Path())
@click.option("--cochar", required=True, help="Rational cocharacter, e.g. '[1,0]'.")
@_format_opt
@_cap_closure_opt
def parabolic_cmd(group_path: str, cochar: str, fmt: str, cap_closure: int) -> None:
    """Parabolic and Levi data of a rational cocharacter."""
    def body() -> str:
        g = load_group(group_path)
        lam = _parse_vec_arg(cochar, "--cochar")
        p = parabolic(g, lam, cap_closure)
        if fmt == "json":
            return dumps({
                "cochar": render_vec(p.cochar),
                "parabolic_roots": list(p.parabolic_roots),
                "levi_roots": list(p.levi_roots),
                "levi_weyl_order": p.levi_weyl.order,
            })
        return (
            f"cochar: {_vec_text(p.cochar)}\n"
            f"parabolic roots: {_ints_text(p.parabolic_roots)}\n"
            f"levi roots: {_ints_text(p.levi_roots)}\n"
            f"levi weyl order: {p.levi_weyl.order}\n"
        )
    _run(body)


@main.command("adapted")
@click.option("--hom", "hom_path", required=True, type=click.Path())
@click.option("--degree", "degree_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def adapted_cmd(hom_path: str, degree_path: str, fmt: str, cap_closure: int) -> None:
    """Is a degree adapted to a homomorphism?"""
    def body() -> str:
        f = load_hom(hom_path, cap_closure)
        deg = load_degree(degree_path, f.source, cap_closure)
        ans = is_adapted(f, deg, cap_closure)
        if fmt == "json":
            return dumps({"adapted": ans})
        return f"adapted: {str(ans).lower()}\n"
    _run(body)


@main.command("push-degree")
@click.option("--hom", "hom_path", required=True, type=click.Path())
@click.option("--degree", "degree_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def push_degree_cmd(hom_path: str, degree_path: str, fmt: str, cap_closure: int) -> None:
    """Pushforward of a degree along a homomorphism."""
    def body() -> str:
        f = load_hom(hom_path, cap_closure)
        deg = load_degree(degree_path, f.source, cap_closure)
        out = push_degree(f, deg, cap_closure)
        labels = [f.target.components.labels[i] for i in out.subgroup]
        if fmt == "json":
            return dumps({"F": labels, "d": render_vec(out.cochar)})
        return f"F: [{', '.join(labels)}]\nd: {_vec_text(out.cochar)}\n"
    _run(body)


@main.command("witness")
@click.option("--hom", "hom_path", required=True, type=click.Path())
@click.option("--degree", "degree_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def witness_cmd(hom_path: str, degree_path: str, fmt: str, cap_closure: int) -> None:
    """Destabilizing one-parameter subgroup for a non-adapted degree."""
    def body() -> str:
        f = load_hom(hom_path, cap_closure)
        deg = load_degree(degree_path, f.source, cap_closure)
        wit = destabilizing_witness(f, deg, cap_closure)
        if fmt == "json":
            return dumps({
                "cochar": render_vec(wit.cochar),
                "weight": render_rat(wit.weight),
                "parabolic_roots": list(wit.parabolic.parabolic_roots),
                "levi_roots": list(wit.parabolic.levi_roots),
            })
        return (
            f"cochar: {_vec_text(wit.cochar)}\n"
            f"weight: {format_rat(wit.weight)}\n"
            f"parabolic roots: {_ints_text(wit.parabolic.parabolic_roots)}\n"
            f"levi roots: {_ints_text(wit.parabolic.levi_roots)}\n"
        )
    _run(body)


@main.command("bundle-ss")
@click.option("--bundle", "bundle_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
def bundle_ss_cmd(bundle_path: str, fmt: str, cap_closure: int) -> None:
    """Semistability of a split or Levi-induced bundle."""
    def body() -> str:
        b = load_bundle(bundle_path, cap_closure)
        if isinstance(b, SplitBundle):
            ans = split_semistable(b)
        else:
            ans = levi_induced_semistable(b, cap_closure)
        if fmt == "json":
            return dumps({"semistable": ans})
        return f"semistable: {str(ans).lower()}\n"
    _run(body)


@main.command("destabilizer")
@click.option("--bundle", "bundle_path", required=True, type=click.Path())
@click.option(
    "--norm", "norm_arg", default="average-identity", show_default=True,
    help="Norm seed: 'average-identity', an inline matrix, or a JSON file; "
    "seeds are averaged to an invariant form.",
)
@_format_opt
@_cap_closure_opt
def destabilizer_cmd(bundle_path: str, norm_arg: str, fmt: str, cap_closure: int) -> None:
    """Norm-optimal destabilizing cocharacter of a split bundle."""
    def body() -> str:
        b = load_bundle(bundle_path, cap_closure)
        if not isinstance(b, SplitBundle):
            raise ValidationError(
                f"{bundle_path}: destabilizer needs a split bundle"
            )
        try:
            if norm_arg.lstrip().startswith("["):
                norm = parse_norm(json.loads(norm_arg), b.group, "--norm", cap_closure)
            elif norm_arg == "average-identity":
                norm = parse_norm(None, b.group, "--norm", cap_closure)
            else:
                with open(norm_arg, "r", encoding="utf-8") as fh:
                    norm = parse_norm(json.load(fh), b.group, norm_arg, cap_closure)
        except (OSError, json.JSONDecodeError) as exc:
            raise ValidationError(f"--norm: {exc}") from exc
        best = canonical_destabilizer(b, norm, cap_closure)
        if fmt == "json":
            payload = None
            if best is not None:
                payload = {
                    "cochar": render_vec(best.cochar),
                    "norm_sq": render_rat(best.norm_sq),
                }
            return dumps({"semistable": best is None, "destabilizer": payload})
        if best is None:
            return "semistable: true\n"
        return (
            "semistable: false\n"
            f"cochar: {_vec_text(best.cochar)}\n"
            f"norm squared: {format_rat(best.norm_sq)}\n"
        )
    _run(body)


@main.command("git-classify")
@click.option("--action", "action_path", required=True, type=click.Path())
@click.option("--support", required=True, help="Weight indices, e.g. '0,2' or '[0,2]'.")
@_format_opt
@_cap_closure_opt
def git_classify_cmd(action_path: str, support: str, fmt: str, cap_closure: int) -> None:
    """Semistability, stability, polystability, and stratum of a support pattern."""
    def body() -> str:
        act = load_action(action_path, cap_closure)
        s = _parse_support_arg(support)
        ss = is_semistable(act, s)
        st = is_stable(act, s)
        ps = is_polystable(act, s)
        stratum = instability(act, s, cap_closure)
        if fmt == "json":
            return dumps({
                "support": sorted(set(s)),
                "semistable": ss,
                "stable": st,
                "polystable": ps,
                "label": render_vec(stratum.label),
                "level": render_rat(stratum.level),
                "centre": list(stratum.centre_indices),
                "attractor": list(stratum.attractor_indices),
            })
        return (
            f"support: {_ints_text(sorted(set(s)))}\n"
            f"semistable: {str(ss).lower()}\n"
            f"stable: {str(st).lower()}\n"
            f"polystable: {str(ps).lower()}\n"
            f"label: {_vec_text(stratum.label)}\n"
            f"level: {format_rat(stratum.level)}\n"
            f"centre: {_ints_text(stratum.centre_indices)}\n"
            f"attractor: {_ints_text(stratum.attractor_indices)}\n"
        )
    _run(body)


def _strata_with_supports(
    act, cap_subsets: Optional[int], cap_closure: int
) -> list[tuple[StratumData, list[tuple[int, ...]]]]:
    sub_cap = cap_subsets if cap_subsets is not None else DEFAULT_SUBSET_CAP
    pat_cap = cap_subsets if cap_subsets is not None else DEFAULT_PATTERN_CAP
    strata = candidate_strata(act, sub_cap, cap_closure)
    assignment = stratify_supports(act, pat_cap, cap_closure)
    realized: dict[QVec, list[tuple[int, ...]]] = {}
    for s, stratum in assignment.items():
        realized.setdefault(stratum.label, []).append(tuple(sorted(s)))
    for sups in realized.values():
        sups.sort(key=lambda t: (len(t), t))
    return [(st, realized.get(st.label, [])) for st in strata]


def _strata_dot(rows: list[tuple[StratumData, list[tuple[int, ...]]]]) -> str:
    lines = ["digraph strata {", "  rankdir=TB;", "  node [shape=box];"]
    for k, (st, sups) in enumerate(rows):
        text = (
            f"M2={format_rat(st.level)} label={_vec_text(st.label)} "
            f"supports={len(sups)}"
        )
        lines.append(f'  s{k} [label="{text}"];')
    levels = []
    for k, (st, _) in enumerate(rows):
        if not levels or levels[-1][0] != st.level:
            levels.append((st.level, [k]))
        else:
            levels[-1][1].append(k)
    for (_, upper), (_, lower) in zip(levels, levels[1:]):
        for a in upper:
            for b in lower:
                lines.append(f"  s{a} -> s{b};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@main.command("git-strata")
@click.option("--action", "action_path", required=True, type=click.Path())
@click.option(
    "--format", "fmt", type=click.Choice(["text", "json", "dot"]), default="text",
)
@_cap_closure_opt
@_cap_subsets_opt
def git_strata_cmd(
    action_path: str, fmt: str, cap_closure: int, cap_subsets: Optional[int]
) -> None:
    """Candidate instability strata with their realized support patterns."""
    def body() -> str:
        act = load_action(action_path, cap_closure)
        rows = _strata_with_supports(act, cap_subsets, cap_closure)
        if fmt == "dot":
            return _strata_dot(rows)
        if fmt == "json":
            return dumps({
                "strata": [
                    {
                        "label": render_vec(st.label),
                        "norm_sq": render_rat(st.level),
                        "cochar": render_vec(st.cochar),
                        "centre": list(st.centre_indices),
                        "attractor": list(st.attractor_indices),
                        "parabolic_roots": list(st.parabolic.parabolic_roots),
                        "supports": [list(s) for s in sups],
                    }
                    for st, sups in rows
                ],
            })
        lines = []
        for k, (st, sups) in enumerate(rows):
            lines.append(
                f"stratum {k}: label={_vec_text(st.label)} "
                f"M2={format_rat(st.level)} "
                f"centre={_ints_text(st.centre_indices)} "
                f"attractor={_ints_text(st.attractor_indices)} "
                f"supports={len(sups)}"
            )
        return "\n".join(lines) + "\n"
    _run(body)


@main.command("git-verify")
@click.option("--action", "action_path", required=True, type=click.Path())
@_format_opt
@_cap_closure_opt
@_cap_subsets_opt
def git_verify_cmd(
    action_path: str, fmt: str, cap_closure: int, cap_subsets: Optional[int]
) -> None:
    """Check the shifted-linearization recursion on every candidate stratum."""
    def body() -> str:
        act = load_action(action_path, cap_closure)
        sub_cap = cap_subsets if cap_subsets is not None else DEFAULT_SUBSET_CAP
        pat_cap = cap_subsets if cap_subsets is not None else DEFAULT_PATTERN_CAP
        strata = candidate_strata(act, sub_cap, cap_closure)
        results = [
            (st, verify_recursion(act, st, pat_cap, cap_closure)) for st in strata
        ]
        ok = all(v for _, v in results)
        if fmt == "json":
            return dumps({
                "all_verified": ok,
                "strata": [
                    {
                        "label": render_vec(st.label),
                        "norm_sq": render_rat(st.level),
                        "verified": v,
                    }
                    for st, v in results
                ],
            })
        lines = [
            f"label={_vec_text(st.label)} M2={format_rat(st.level)} "
            f"verified={str(v).lower()}"
            for st, v in results
        ]
        lines.append(f"all verified: {str(ok).lower()}")
        return "\n".join(lines) + "\n"
    _run(body)


if __name__ == "__main__":
    main()
