"""Command-line frontend: ``conelab <subcommand> --manifold "<spec>" ...``."""
from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .canonical import canonical_set, standard_canonical
from .cones import (
    ConeStatus, castelnuovo, forward_reference, gt_dimension, in_K_symplectic_cone,
    in_symplectic_cone, surface_cone_position, surface_representable, wall_crossing,
)
from .duality import DualQuery, dual_sample_check, duality_verdict
from .exceptional import RuledFamily, exceptional_K_set, exceptional_set
from .lattice import ConelabError, ManifoldModel
from .transform import reduce


class ParseError(ConelabError):
    def __init__(self, msg: str, text: str = "", pos: int | None = None):
        self.text, self.pos = text, pos
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{msg}{where}")


def _int(tok: str, text: str, pos: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"expected an integer, got {tok!r}", text, pos) from None


def _read_matrix(value: str, text: str, pos: int) -> list[list[int]]:
    path = Path(value)
    if not path.is_file():
        # inline rows: "0,1;1,0"
        if not all(c.isdigit() or c in ",;-" for c in value):
            raise ParseError(f"qmin {value!r} is neither a file nor inline rows like 0,1;1,0", text, pos)
        rows = [r for r in value.split(";") if r.strip()]
        return [[_int(t, text, pos) for t in r.split(",")] for r in rows]
    rows = [ln.split() for ln in path.read_text().splitlines() if ln.strip() and not ln.startswith("#")]
    return [[_int(t, text, pos) for t in r] for r in rows]


def parse_manifold_spec(text: str) -> ManifoldModel:
    tokens = []
    i = 0
    for part in text.split():
        i = text.index(part, i)
        tokens.append((part, i))
        i += len(part)
    if not tokens:
        raise ParseError("empty manifold spec", text, 0)
    kind, kpos = tokens[0]
    allowed = {"rational": {"l"}, "ruled": {"g", "l"}, "general": {"qmin", "vmin", "l", "b1"}}
    if kind not in allowed:
        raise ParseError(f"unknown model {kind!r} (expected rational, ruled or general)", text, kpos)
    kv: dict[str, tuple[str, int]] = {}
    for tok, pos in tokens[1:]:
        if "=" not in tok:
            raise ParseError(f"expected key=value, got {tok!r}", text, pos)
        k, v = tok.split("=", 1)
        if k not in allowed[kind]:
            raise ParseError(f"unexpected key {k!r} for {kind}", text, pos)
        if k in kv:
            raise ParseError(f"duplicate key {k!r}", text, pos)
        kv[k] = (v, pos)
    for need in sorted(allowed[kind] - {"b1"}):
        if need not in kv:
            raise ParseError(f"missing {need}= for {kind}", text, len(text))
    try:
        if kind == "rational":
            v, p = kv["l"]
            return ManifoldModel.rational(_int(v, text, p))
        if kind == "ruled":
            g, gp = kv["g"]
            gi = _int(g, text, gp)
            if gi < 1:
                raise ParseError("g must be >= 1", text, gp)
            v, p = kv["l"]
            return ManifoldModel.ruled(gi, _int(v, text, p))
        q, qp = kv["qmin"]
        vm, vp = kv["vmin"]
        lv, lp = kv["l"]
        b1 = _int(kv["b1"][0], text, kv["b1"][1]) if "b1" in kv else 0
        return ManifoldModel.general(_read_matrix(q, text, qp),
                                     [_int(t, text, vp) for t in vm.split(",")],
                                     _int(lv, text, lp), b1)
    except ParseError:
        raise
    except ConelabError as exc:
        raise ParseError(str(exc), text, tokens[0][1]) from None


def parse_class(text: str):
    out = []
    for tok in text.split(","):
        tok = tok.strip()
        try:
            f = Fraction(tok)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad coefficient {tok!r}", text, text.find(tok)) from None
        out.append(int(f) if f.denominator == 1 else f)
    return tuple(out)


def format_class(c) -> str:
    return ",".join(str(v) for v in c)


def _default_bound() -> int:
    try:
        return int(os.environ.get("CONELAB_BOUND", "12"))
    except ValueError:
        return 12


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="conelab", description=__doc__)
    sub = p.add_subparsers(dest="cmd", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--manifold", required=True, help='e.g. "rational l=3"')
    common.add_argument("--bound", type=int, default=_default_bound())
    common.add_argument("--json", action="store_true", help="machine-readable output")
    for name in ("reduce", "canonical", "exceptional", "cone", "kcone", "surface", "sandwich",
                 "gtdim", "wallcross", "castelnuovo", "duality"):
        sp = sub.add_parser(name, parents=[common])
        if name in ("reduce", "cone", "kcone", "surface", "sandwich", "gtdim", "wallcross"):
            sp.add_argument("--class", dest="cls", required=True, help="comma-separated coefficients")
        if name in ("exceptional", "kcone", "surface", "sandwich", "gtdim", "wallcross",
                    "castelnuovo", "duality"):
            sp.add_argument("--canonical", help="canonical class (default: the standard one)")
        if name in ("kcone", "surface", "sandwich", "castelnuovo"):
            sp.add_argument("--ref", help="positive class fixing the forward cone when K does not")
        if name == "wallcross":
            sp.add_argument("--gamma")
            sp.add_argument("--b1", type=int)
        if name == "castelnuovo":
            sp.add_argument("--b1", type=int)
        if name == "duality":
            sp.add_argument("--samples", type=int, default=0)
            sp.add_argument("--seed", type=int, default=0)
    return p


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        for ln in text_lines:
            print(ln)


def _verdict_lines(v) -> list[str]:
    lines = [f"status: {v.status.value}"]
    if v.certificate is not None:
        c = v.certificate
        lines.append("certificate: " + (format_class(c) if isinstance(c, tuple) else json.dumps(c)))
    if v.detail:
        lines.append(f"detail: {v.detail}")
    return lines


def run(args) -> int:
    M = parse_manifold_spec(args.manifold)
    K = parse_class(args.canonical) if getattr(args, "canonical", None) else standard_canonical(M)
    ref = parse_class(args.ref) if getattr(args, "ref", None) else None
    e = parse_class(args.cls) if getattr(args, "cls", None) else None
    cmd = args.cmd

    if cmd == "reduce":
        red, trace, flipped = reduce(M, e)
        off = M.offset
        bconv = list(red[:off]) + [-v for v in red[off:]]
        payload = {"class": list(red), "reduced_form": bconv, "orientation_flipped": flipped,
                   "trace": [str(m) for m in trace.moves]}
        labels = M.basis_labels
        _emit(args, payload, [
            "stored: " + format_class(red),
            "reduced form (" + ", ".join(labels[:off]) + "; " +
            ", ".join(("b" if M.kind == "rational" else "c") + str(i) for i in range(1, M.l + 1)) +
            "): " + format_class(bconv[:off]) + "; " + format_class(bconv[off:]),
            f"orientation flipped: {str(flipped).lower()}",
            "trace:", *(["  " + str(m) for m in trace.moves] or ["  (empty)"])])
        return 0

    if cmd == "canonical":
        cs = canonical_set(M, args.bound)
        _emit(args, {"classes": [list(c) for c in cs]}, [format_class(c) for c in cs])
        return 0

    if cmd == "exceptional":
        es = exceptional_K_set(M, K, args.bound) if args.canonical else exceptional_set(M, args.bound)
        if isinstance(es, RuledFamily):
            _emit(args, {"family": es.describe()}, es.describe())
        else:
            _emit(args, {"classes": [list(c) for c in es], "complete": es.complete},
                  [format_class(c) for c in es])
        return 0

    if cmd in ("cone", "kcone", "sandwich"):
        if cmd == "cone":
            v = in_symplectic_cone(M, e, args.bound)
        elif cmd == "kcone":
            v = in_K_symplectic_cone(M, K, e, args.bound, ref)
        else:
            v = surface_cone_position(M, K, e, args.bound, ref)
        _emit(args, v.to_json(), _verdict_lines(v))
        return 1 if v.status == ConeStatus.OUT else 0

    if cmd == "surface":
        r = surface_representable(M, K, e, args.bound, ref)
        _emit(args, {"status": r.value}, [r.value])
        return 0

    if cmd == "gtdim":
        d = gt_dimension(M, K, e)
        _emit(args, {"d": d.d, "sw_half": d.sw_half}, [f"d = {d.d}"] +
              ([f"d/2 = {d.sw_half}"] if d.sw_half is not None else []))
        return 0

    if cmd == "wallcross":
        gamma = parse_class(args.gamma) if args.gamma else None
        w = wall_crossing(M, K, e, gamma, args.b1)
        _emit(args, {"value": str(w)}, [str(w)])
        return 0

    if cmd == "castelnuovo":
        c = castelnuovo(M, K, args.b1, ref)
        _emit(args, {"verdict": c.value}, [c.value])
        return 0

    if cmd == "duality":
        rep = duality_verdict(M, K, args.bound)
        payload = rep.to_json()
        lines = [f"verdict: {rep.verdict.value}"] + ([f"case: {rep.case}"] if rep.case else [])
        lines += ["square-zero ray: " + format_class(r) for r in rep.rays]
        if args.samples and rep.rays:
            fref = forward_reference(M, K)
            checks = []
            for r in rep.rays:
                s = dual_sample_check(DualQuery(M, [], r, fref), args.samples, args.seed)
                checks.append({"ray": list(r), "passed": s.passed, "samples": s.samples})
                lines.append(f"sample check {format_class(r)}: {'pass' if s.passed else 'FAIL'}")
            payload["sample_checks"] = checks
        _emit(args, payload, lines)
        return 0
    raise ParseError(f"unknown subcommand {cmd}")


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return run(args)
    except ConelabError as exc:
        print(f"conelab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
