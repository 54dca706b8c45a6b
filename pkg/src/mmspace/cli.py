"""Command-line front end: ``mmspace <verb> [flags]``.

Exit status: 0 success, 1 a verified INFEASIBLE verdict (or failed check),
2 bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path
from typing import Sequence

from . import carrying, complex as mm, curvature, embed, hypertree as ht, pc as pcm
from .curvature import fmt
from .export import link_to_dot, poset_to_dot

EXIT_OK, EXIT_INFEASIBLE, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse exits 2 already; keep its message format
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _emit(args, text: str) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=False)


def _tree(args) -> ht.Hypertree:
    if not args.tree:
        raise UsageError("--tree is required")
    text = args.tree.strip()
    if text.startswith("{"):
        return ht.Hypertree.from_json(json.loads(text))
    return ht.parse_tree_name(text)


def _tree_name(t: ht.Hypertree) -> str:
    return ht.classify4(t).name if t.rank == 4 else str(t)


def _pcs(args, n: int) -> list[pcm.PartialConjugation]:
    if not args.pc:
        raise UsageError("--pc is required")
    return [pcm.parse_pc(p, n) for p in args.pc]


# -- verbs -----------------------------------------------------------------------


def cmd_enumerate(args) -> int:
    trees = ht.enumerate_hypertrees(args.n)
    if args.count:
        _emit(args, str(len(trees)))
    elif args.format == "json":
        _emit(args, _json([t.to_json() for t in trees]))
    else:
        _emit(args, "\n".join(f"{_tree_name(t)}\theight={t.height}\t{t}" for t in trees))
    return EXIT_OK


def cmd_classify(args) -> int:
    if args.tree:
        t = _tree(args)
        info = {"tree": t.to_json(), "height": t.height}
        if t.rank == 4:
            tag = ht.classify4(t)
            info.update({"class": tag.kind, "name": tag.name})
        _emit(args, _json(info) if args.format == "json" else f"{info.get('name', t)}\t{info.get('class', '')}\theight={t.height}")
        return EXIT_OK
    counts = Counter(ht.classify4(t).kind for t in ht.enumerate_hypertrees(4))
    rows = {k: counts[k] for k in ("nuclear", "star", "line", "omega")}
    _emit(args, _json(rows) if args.format == "json" else "\n".join(f"{k}\t{v}" for k, v in rows.items()))
    return EXIT_OK


def cmd_poset(args) -> int:
    trees = ht.enumerate_hypertrees(args.n)
    if args.format == "dot":
        _emit(args, poset_to_dot(trees))
        return EXIT_OK
    pairs = [(_tree_name(a), _tree_name(b)) for a, b in ht.hasse_edges(trees)]
    chain = ht.longest_chain(trees)
    if args.format == "json":
        _emit(args, _json({"covers": pairs, "longest_chain": [_tree_name(t) for t in chain]}))
    else:
        lines = [f"{a} < {b}" for a, b in pairs]
        lines.append(f"longest chain: {len(chain)} elements")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_carries(args) -> int:
    t = _tree(args)
    out = [f"{x}\t{carrying.carries(t, x)}" for x in _pcs(args, t.rank)]
    _emit(args, "\n".join(out))
    return EXIT_OK


def cmd_carrier(args) -> int:
    xs = _pcs(args, args.n)
    t = carrying.build_carrier(xs)
    if args.format == "json":
        _emit(args, _json(None if t is None else t.to_json()))
    else:
        _emit(args, "none: inputs do not pairwise commute" if t is None else _tree_name(t))
    return EXIT_OK


def cmd_carried_group(args) -> int:
    t = _tree(args)
    elems = carrying.carried_sorted(t)
    if args.format == "json":
        _emit(args, _json([g.to_json() for g in elems]))
    else:
        _emit(args, "\n".join(str(g) for g in elems))
    return EXIT_OK


def cmd_link(args) -> int:
    g = mm.link(_tree(args), args.mode)
    if args.format == "dot":
        _emit(args, link_to_dot(g))
    elif args.format == "json":
        _emit(args, _json(g.to_json()))
    else:
        lines = [f"{len(g.vertices)} vertices, {len(g.edges)} edges"]
        lines += [f"{g.vertices[a]} -- {g.vertices[b]}\t{c.name}" for a, b, c in g.edges]
        _emit(args, "\n".join(lines))
    return EXIT_OK


def _system(args) -> curvature.AngleSystem:
    if args.system:
        return curvature.AngleSystem.from_json(json.loads(Path(args.system).read_text()))
    sys_ = curvature.hand_derived_system(args.mode) if args.hand_derived else curvature.build_system(args.mode)
    if args.drop_star:
        if args.mode != mm.OUT:
            raise UsageError("--drop-star applies to --mode out")
        sys_ = sys_.without(lambda r: r == curvature.STAR_ROW)
    return sys_


def cmd_inequalities(args) -> int:
    s = _system(args)
    if args.format == "json":
        _emit(args, _json(s.to_json()))
    else:
        _emit(args, "\n".join(str(r) for r in s.rows))
    return EXIT_OK


def cmd_check(args) -> int:
    s = _system(args)
    res = curvature.feasible(s)
    if isinstance(res, curvature.Feasible):
        lines = ["FEASIBLE"] + [f"{v.name} = {fmt(q)}" for v, q in res.point.items()]
        if res.caveat:
            lines.append("caveat: some variable is 0 (closed-box point only)")
        sys.stdout.write("\n".join(lines) + "\n")
        return EXIT_OK
    if not curvature.verify_certificate(res.certificate, s):  # pragma: no cover - solver guard
        sys.stderr.write("internal error: certificate failed verification\n")
        return EXIT_USAGE
    path = Path(args.out or f"certificate-{args.mode}.json")
    path.write_text(_json(_certificate_doc(s, res.certificate)) + "\n")
    sys.stdout.write(f"INFEASIBLE\ncertificate: {path}\n")
    return EXIT_INFEASIBLE


def _certificate_doc(s: curvature.AngleSystem, cert: curvature.FarkasCertificate) -> dict:
    total, rhs = curvature.certificate_combination(cert, s)
    return {
        "mode": s.mode,
        "system": s.to_json(),
        "certificate": cert.to_json(),
        "combination": {"lhs": {v.name: fmt(c) for v, c in total.items() if c}, "rhs": fmt(rhs)},
        "support": [{"multiplier": fmt(m), "row": str(r)} for m, r in cert.support(s)],
    }


def cmd_certificate(args) -> int:
    if args.verify:
        doc = json.loads(Path(args.verify).read_text())
        s = curvature.AngleSystem.from_json(doc["system"])
        cert = curvature.FarkasCertificate.from_json(doc["certificate"])
        ok = curvature.verify_certificate(cert, s)
        sys.stdout.write(("VALID" if ok else "INVALID") + "\n")
        return EXIT_OK if ok else EXIT_INFEASIBLE
    s = _system(args)
    res = curvature.feasible(s)
    if isinstance(res, curvature.Feasible):
        sys.stdout.write("FEASIBLE: no certificate exists\n")
        return EXIT_OK
    doc = _certificate_doc(s, res.certificate)
    if args.format == "json":
        _emit(args, _json(doc))
    else:
        lines = [f"{d['multiplier']} * ({d['row']})" for d in doc["support"]]
        lines.append(f"sum: 0 <= {doc['combination']['rhs']}")
        _emit(args, "\n".join(lines))
    return EXIT_OK


def cmd_symmetrize(args) -> int:
    s = curvature.build_system(mm.OUT0) if not args.system else _system(args)
    sym = curvature.symmetrize(s)
    same = sym.row_set() == curvature.build_system(mm.OUT).row_set()
    if args.format == "json":
        _emit(args, _json({"system": sym.to_json(), "equals_out_system": same}))
    else:
        _emit(args, "\n".join([str(r) for r in sym.rows] + [f"equals Out-mode system: {same}"]))
    return EXIT_OK


def cmd_embed(args) -> int:
    n = args.n
    trees4 = ht.enumerate_hypertrees(4)
    images = {t: embed.tilde(t, n) for t in trees4}
    order_ok = all(ht.leq(a, b) == ht.leq(images[a], images[b]) for a in trees4 for b in trees4)
    sizes_ok = all(
        len(carrying.carried_group(images[t])) == 2 ** (t.height + n - 4) for t in trees4
    )
    section_ok = all(embed.phi5plus(embed.psi5plus(y, n)) == y for y in pcm.generators(4))
    if args.format == "json":
        _emit(args, _json({
            "tilde": {ht.classify4(t).name: images[t].to_json() for t in trees4},
            "order_embedding": order_ok,
            "carried_sizes": sizes_ok,
            "section": section_ok,
        }))
    else:
        lines = [f"{ht.classify4(t).name} -> {images[t]}" for t in trees4]
        lines += [f"order embedding: {order_ok}", f"carried sizes 2^(h+{n - 4}): {sizes_ok}",
                  f"phi o psi = id: {section_ok}"]
        _emit(args, "\n".join(lines))
    return EXIT_OK if order_ok and sizes_ok and section_ok else EXIT_INFEASIBLE


def cmd_fixed_points(args) -> int:
    patch = embed.identity_patch(args.n, pairs=args.pairs)
    fixed = embed.fixed_vertices(patch, args.n)
    same = fixed == embed.expected_fixed(patch)
    if args.format == "json":
        _emit(args, _json({
            "patch": len(patch),
            "fixed": sorted((v.to_json() for v in fixed), key=json.dumps),
            "equals_tilde_image": same,
        }))
    else:
        _emit(args, f"patch vertices: {len(patch)}\nfixed: {len(fixed)}\nequals tilde image: {same}")
    return EXIT_OK if same else EXIT_INFEASIBLE


def cmd_oracle_verify(args) -> int:
    n = args.n
    gens = pcm.generators(n)
    mismatches = [
        (str(a), str(b)) for k, a in enumerate(gens) for b in gens[k + 1:]
        if pcm.commutes(a, b) != pcm.oracle_commutes(a, b)
    ]
    rels = pcm.relation_instances(n)
    bad = [" ".join(map(str, w)) for w, _ in rels if not pcm.word_outer_equal(list(w), [], n)]
    kinds = Counter(k for _, k in rels)
    lines = [
        f"generators: {len(gens)}",
        f"commuting criterion vs oracle mismatches: {len(mismatches)}",
        "relations: " + ", ".join(f"{k}={kinds.get(k, 0)}" for k in ("R1", "R2", "R3")),
        f"relations not inner: {len(bad)}",
    ]
    _emit(args, "\n".join(lines))
    return EXIT_OK if not mismatches and not bad else EXIT_INFEASIBLE


VERBS = {
    "enumerate": cmd_enumerate,
    "classify": cmd_classify,
    "poset": cmd_poset,
    "carries": cmd_carries,
    "carrier": cmd_carrier,
    "carried-group": cmd_carried_group,
    "link": cmd_link,
    "inequalities": cmd_inequalities,
    "check": cmd_check,
    "certificate": cmd_certificate,
    "symmetrize": cmd_symmetrize,
    "embed": cmd_embed,
    "fixed-points": cmd_fixed_points,
    "oracle-verify": cmd_oracle_verify,
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="mmspace", description=__doc__.splitlines()[0])
    p.add_argument("verb", choices=sorted(VERBS))
    p.add_argument("--n", type=int, default=None)
    p.add_argument("--mode", choices=mm.MODES, default=mm.OUT)
    p.add_argument("--tree")
    p.add_argument("--pc", action="append", help="partial conjugation, e.g. 'x[1,{3}]'; repeatable")
    p.add_argument("--format", choices=("json", "dot", "text"), default="text")
    p.add_argument("--out")
    p.add_argument("--count", action="store_true")
    p.add_argument("--system", help="angle system JSON file instead of the generated one")
    p.add_argument("--hand-derived", action="store_true", help="only the hand-derived inequality families")
    p.add_argument("--drop-star", action="store_true", help="drop the 6 gamma_S >= 2 row (Out mode)")
    p.add_argument("--verify", help="certificate JSON file to re-check")
    p.add_argument("--pairs", action="store_true", help="add commuting generator pairs to the patch")
    return p


DEFAULT_N = {"embed": 5, "fixed-points": 5}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.n is None:
            args.n = DEFAULT_N.get(args.verb, 4)
        return VERBS[args.verb](args)
    except UsageError as exc:
        sys.stderr.write(f"mmspace: error: {exc}\n")
        return EXIT_USAGE
    except (ValueError, KeyError, json.JSONDecodeError, OSError, NotImplementedError) as exc:
        sys.stderr.write(f"mmspace: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
