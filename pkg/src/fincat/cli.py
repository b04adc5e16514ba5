"""Command-line front end: ``fincat [options] COMMAND ARGS``.

Exit codes: 0 success or predicate true, 1 predicate false, 2 invalid input,
3 work limit exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from .comma import DiagMorphismLeft, DiagMorphismRight, is_initial, is_relatively_initial, pi0
from .core import FinCat, Verdict
from .equivalence import (
    brute_force_right_counterexample,
    brute_force_weak_equivalence,
    is_weak_equivalence_left,
    is_weak_equivalence_right_pseudo,
)
from .errors import FinCatError, NotPseudo, WorkLimitExceeded
from .factorization import comprehensive_factorize
from .fibration import (
    DEFAULT_WORK_LIMIT,
    Copresheaf,
    CopresheafMap,
    enumerate_lifts,
    fibres_copresheaf,
    grothendieck,
    is_discrete_opfibration,
    limit_finset,
)
from .io import Bundle, fixtures_bundle, load_bundle
from .localization import LocHom, loc_compose, loc_from_diag_morphism, loc_hom_set, loc_is_iso, loc_to_zigzag

EXIT_TRUE, EXIT_FALSE, EXIT_INVALID, EXIT_LIMIT = 0, 1, 2, 3


class UsageError(FinCatError):
    pass


def _plain(v):
    """Make a value JSON-friendly."""
    if isinstance(v, Copresheaf):
        X = v.base
        return {
            "sets": {str(x): [_plain(s) for s in ss] for x, ss in zip(X.objects, v.sets)},
            "act": {
                str(X.morphisms[m]): [_plain(v.sets[X.cod_i[m]][i]) for i in a]
                for m, a in enumerate(v.act) if not X.is_identity_i[m]
            },
        }
    if isinstance(v, CopresheafMap):
        X = v.source.base
        return {str(x): [_plain(v.target.sets[i][j]) for j in c] for i, (x, c) in enumerate(zip(X.objects, v.comps))}
    if isinstance(v, dict):
        return {str(_plain(k)) if not isinstance(k, str) else k: _plain(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    return v


def _show(v) -> str:
    if isinstance(v, dict):
        return ", ".join(f"{_show(k)} -> {_show(x)}" for k, x in v.items())
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return str(v)


class Reporter:
    def __init__(self, fmt: str, out=None):
        self.fmt = fmt
        self.out = out or sys.stdout

    def record(self, rec: dict, human: str):
        if self.fmt == "records":
            self.out.write(json.dumps(_plain(rec), ensure_ascii=False) + "\n")
        else:
            self.out.write(human.rstrip("\n") + "\n")


def _verdict(rep: Reporter, command: str, subject: str, v: Verdict, force_witness: bool, extra=None) -> int:
    rec = {"command": command, "subject": subject, "value": v.value}
    if v.reason:
        rec["reason"] = v.reason
    # records always carry the certificate; --witness only widens the human report
    if v.witness is not None:
        rec["witness"] = v.witness
    if extra:
        rec.update(extra)
    human = f"{command} {subject}: {'true' if v.value else 'false'}"
    if not v.value or force_witness:
        if v.reason:
            human += f" ({v.reason})"
        if v.witness:
            human += "\n" + "\n".join(f"  {k}: {_show(_plain(x))}" for k, x in v.witness.items())
    rep.record(rec, human)
    return EXIT_TRUE if v.value else EXIT_FALSE


def _table(rows) -> str:
    return "\n".join("  " + "  ".join(_show(c) for c in r) for r in rows)


def _category_summary(c: FinCat) -> dict:
    return {"objects": list(c.objects), "morphisms": [[c.morphisms[m], c.objects[c.dom_i[m]], c.objects[c.cod_i[m]]]
                                                      for m in range(c.n_mor)]}


def _lochom(b: Bundle, ref: str) -> LocHom:
    """A diagram-morphism name, or ``D:D':i`` for the i-th element of a hom-set."""
    if ref in b.morphisms:
        m = b.morphisms[ref]
        if not isinstance(m, DiagMorphismLeft):
            raise UsageError(f"{ref!r} is not a contravariant diagram morphism")
        return loc_from_diag_morphism(m)
    parts = ref.split(":")
    if len(parts) != 3:
        raise UsageError(f"{ref!r} is neither a diagram morphism nor of the form D:D':i")
    d, d2 = b.get("diagram", parts[0]), b.get("diagram", parts[1])
    homs = loc_hom_set(d, d2)
    try:
        return homs[int(parts[2])]
    except (ValueError, IndexError):
        raise UsageError(f"index {parts[2]!r} out of range: the hom-set has {len(homs)} elements") from None


def run(args, bundle: Bundle, rep: Reporter) -> int:
    cmd = args.command
    a = args.args
    w = args.witness

    def arity(n):
        if len(a) != n:
            raise UsageError(f"{cmd} takes {n} argument(s), got {len(a)}")

    if cmd == "validate":
        counts = {k: len(bundle.section(k)) for k in ("category", "functor", "nat", "diagram", "copresheaf",
                                                      "diagram_morphism")}
        rep.record({"command": cmd, "value": True, "counts": counts},
                   "workspace valid: " + ", ".join(f"{n} {k}" for k, n in counts.items()))
        return EXIT_TRUE
    if cmd == "initial":
        arity(1)
        return _verdict(rep, cmd, a[0], is_initial(bundle.get("functor", a[0])), w)
    if cmd == "rel-initial":
        arity(1)
        m = bundle.get("diagram_morphism", a[0])
        if not isinstance(m, DiagMorphismRight):
            raise UsageError("relative initiality is defined for covariant (kind: right) morphisms")
        return _verdict(rep, cmd, a[0], is_relatively_initial(m), w)
    if cmd == "dopf":
        arity(1)
        return _verdict(rep, cmd, a[0], is_discrete_opfibration(bundle.get("functor", a[0])), w)
    if cmd == "fibres":
        arity(1)
        F = fibres_copresheaf(bundle.get("functor", a[0]))
        X = F.base
        rows = [(x, ", ".join(map(_show, s)) or "∅") for x, s in zip(X.objects, F.sets)]
        rep.record({"command": cmd, "subject": a[0], "copresheaf": F}, f"fibres of {a[0]}:\n" + _table(rows))
        return EXIT_TRUE
    if cmd == "grothendieck":
        arity(1)
        El, p = grothendieck(bundle.get("copresheaf", a[0]))
        rep.record(
            {"command": cmd, "subject": a[0], "category": _category_summary(El)},
            f"elements of {a[0]}: {El.n_obj} objects, {El.n_mor} morphisms\n"
            + _table([(El.morphisms[m], ":", El.objects[El.dom_i[m]], "->", El.objects[El.cod_i[m]])
                      for m in range(El.n_mor)]),
        )
        return EXIT_TRUE
    if cmd == "lifts":
        arity(2)
        d, p = bundle.get("diagram", a[0]), bundle.get("functor", a[1])
        lifts = enumerate_lifts(d, p)
        maps = [l.total.object_map for l in lifts]
        rep.record({"command": cmd, "diagram": a[0], "along": a[1], "count": len(lifts), "lifts": maps},
                   f"{len(lifts)} lifts of {a[0]} along {a[1]}\n"
                   + _table([(i, ", ".join(f"{j}↦{_show(e)}" for j, e in mp.items())) for i, mp in enumerate(maps)]))
        return EXIT_TRUE
    if cmd == "factorize":
        arity(1)
        f = comprehensive_factorize(bundle.get("diagram", a[0]))
        P, X = f.copresheaf, f.copresheaf.base
        rep.record(
            {"command": cmd, "subject": a[0], "copresheaf": P, "initial_part": f.initial_part.object_map},
            f"comprehensive copresheaf of {a[0]}:\n"
            + _table([(x, len(s), ", ".join(map(_show, s)) or "∅") for x, s in zip(X.objects, P.sets)])
            + "\ninitial part:\n" + _table([(j, "↦", e) for j, e in f.initial_part.object_map.items()]),
        )
        return EXIT_TRUE
    if cmd == "weq":
        arity(1)
        m = bundle.get("diagram_morphism", a[0])
        if isinstance(m, DiagMorphismLeft):
            v = is_weak_equivalence_left(m)
        elif m.is_pseudo:
            v = is_weak_equivalence_right_pseudo(m)
        else:
            raise NotPseudo("no exact test for covariant morphisms with non-invertible components; use weq-oracle")
        return _verdict(rep, cmd, a[0], v, w)
    if cmd == "weq-oracle":
        arity(1)
        m = bundle.get("diagram_morphism", a[0])
        if isinstance(m, DiagMorphismLeft):
            v = brute_force_weak_equivalence(m, args.bound, args.work_limit)
        else:
            v = brute_force_right_counterexample(m, args.bound, args.work_limit)
        return _verdict(rep, cmd, a[0], v, w, {"bound": args.bound})
    if cmd == "limit":
        arity(1)
        L, _ = limit_finset(bundle.get("copresheaf", a[0]))
        rep.record({"command": cmd, "subject": a[0], "size": len(L), "families": list(L.elements)},
                   f"limit of {a[0]}: {len(L)} families\n" + _table([(fam,) for fam in L.elements]))
        return EXIT_TRUE
    if cmd == "pi0":
        arity(1)
        p = pi0(bundle.get("category", a[0]))
        rep.record({"command": cmd, "subject": a[0], "count": len(p), "blocks": list(p.blocks)},
                   f"{len(p)} components of {a[0]}\n" + _table([(", ".join(map(_show, blk)),) for blk in p.blocks]))
        return EXIT_TRUE
    if cmd == "loc-hom":
        arity(2)
        homs = loc_hom_set(bundle.get("diagram", a[0]), bundle.get("diagram", a[1]))
        rep.record(
            {"command": cmd, "source": a[0], "target": a[1], "count": len(homs),
             "maps": [h.map for h in homs], "isos": [loc_is_iso(h) for h in homs]},
            f"{len(homs)} morphisms {a[0]} -> {a[1]} in the localization\n"
            + _table([(i, _show(_plain(h.map)), "iso" if loc_is_iso(h) else "") for i, h in enumerate(homs)]),
        )
        return EXIT_TRUE
    if cmd == "loc-compose":
        if len(a) < 2:
            raise UsageError("loc-compose takes at least two morphisms")
        h = _lochom(bundle, a[0])
        for s in a[1:]:
            h = loc_compose(h, _lochom(bundle, s))
        homs = loc_hom_set(h.source, h.target)
        idx = next(i for i, k in enumerate(homs) if k.map == h.map)
        rep.record({"command": cmd, "map": h.map, "index": idx, "iso": loc_is_iso(h)},
                   f"composite: {_show(_plain(h.map))} (index {idx}{', iso' if loc_is_iso(h) else ''})")
        return EXIT_TRUE
    if cmd == "zigzag":
        arity(1)
        z = loc_to_zigzag(_lochom(bundle, a[0]))
        rep.record(
            {"command": cmd, "apex": _category_summary(z.apex.shape),
             "forward": z.forward.object_map, "backward": z.backward.object_map},
            f"apex: {z.apex.shape.n_obj} objects, {z.apex.shape.n_mor} morphisms\n"
            "forward (target shape -> apex):\n" + _table([(j, "↦", e) for j, e in z.forward.object_map.items()])
            + "\nbackward, initial (source shape -> apex):\n"
            + _table([(j, "↦", e) for j, e in z.backward.object_map.items()]),
        )
        return EXIT_TRUE
    raise UsageError(f"unknown command {cmd!r}")


COMMANDS = ("validate", "initial", "rel-initial", "dopf", "fibres", "grothendieck", "lifts", "factorize",
            "weq", "weq-oracle", "limit", "pi0", "loc-hom", "loc-compose", "zigzag")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fincat", description="Compute with finite categories and diagrams.")
    p.add_argument("-w", "--workspace", action="append", default=[],
                   help="workspace file or directory (repeatable); default: the shipped fixtures")
    p.add_argument("--fixtures", action="store_true", help="load the shipped fixtures before any workspace")
    p.add_argument("--format", choices=("human", "records"), default="human")
    p.add_argument("--bound", type=int, default=2, help="fibre bound for weq-oracle")
    p.add_argument("--work-limit", type=int, default=DEFAULT_WORK_LIMIT)
    p.add_argument("--witness", action="store_true", help="emit certificates for true answers as well")
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("args", nargs="*")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    rep = Reporter(args.format)
    try:
        if args.workspace:
            bundle = load_bundle(args.workspace, fixtures_bundle() if args.fixtures else None)
        else:
            bundle = fixtures_bundle()
        return run(args, bundle, rep)
    except WorkLimitExceeded as exc:
        rep.record({"command": args.command, "error": type(exc).__name__, "message": str(exc)},
                   f"work limit exceeded: {exc}")
        return EXIT_LIMIT
    except FinCatError as exc:
        rep.record({"command": args.command, "error": type(exc).__name__, "message": str(exc)},
                   f"error: {type(exc).__name__}: {exc}")
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
