"""Command line interface.

Object literals: ``n:k`` for a chain acting on a chain (k may be -1) and
``n:TREE`` for a chain acting on a tree operad, where TREE uses the
planar tree literal syntax (``*``, ``(...)``, ``empty``).

Exit status is 0 exactly when the requested command found no violations.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import chainact, fincat, nerve, ptree, treeact, verify


def parse_object(lit: str):
    """Returns ('chain', obj) or ('tree', obj)."""
    if ":" not in lit:
        raise ValueError(f"bad object literal {lit!r}; want n:k or n:TREE")
    left, right = lit.split(":", 1)
    n = int(left)
    try:
        k = int(right)
    except ValueError:
        return "tree", treeact.build(n, ptree.parse(right))
    return "chain", chainact.build(n, k)


def _module_for(kind):
    return chainact if kind == "chain" else treeact


def cmd_build(args):
    kind, obj = parse_object(args.object)
    if kind == "chain":
        print(f"{obj!r}: acting objects {len(obj.c_objects)}, "
              f"acted objects {obj.n_objects}, degree {obj.degree}")
    else:
        print(f"{obj!r}: acting objects {len(obj.c_objects)}, "
              f"colors {obj.n_colors}, generators {obj.n_gens}, "
              f"degree {obj.degree}")
    return 0


def _hom(kind, src, tgt):
    return _module_for(kind).hom_enumerate(src, tgt)


def cmd_hom(args):
    kind, src = parse_object(args.src)
    kind2, tgt = parse_object(args.tgt)
    if kind != kind2:
        raise ValueError("source and target live in different families")
    mod = _module_for(kind)
    homs = _hom(kind, src, tgt)
    print(f"|Hom({src!r}, {tgt!r})| = {len(homs)}")
    for i, m in enumerate(homs):
        plus, minus = mod.classify(m)
        cls = {(True, True): "iso", (True, False): "plus",
               (False, True): "minus", (False, False): "none"}[(plus, minus)]
        print(f"  [{i}] {m.format()} {cls}")
    return 0


def cmd_compose(args):
    kind, src = parse_object(args.src)
    _, mid = parse_object(args.mid)
    _, tgt = parse_object(args.tgt)
    mod = _module_for(kind)
    f = _hom(kind, src, mid)[args.i]
    g = _hom(kind, mid, tgt)[args.j]
    h = mod.compose(f, g)
    idx = list(_hom(kind, src, tgt)).index(h)
    print(f"({args.i}) . ({args.j}) = [{idx}] {h.format()}")
    return 0


def cmd_factorize(args):
    kind, src = parse_object(args.src)
    kind2, tgt = parse_object(args.tgt)
    if kind != kind2:
        raise ValueError("source and target live in different families")
    mod = _module_for(kind)
    m = _hom(kind, src, tgt)[args.index]
    mn, pl = mod.reedy_factorize(m)
    print(f"morphism: {m.format()}")
    print(f"middle:   {mn.tgt!r}")
    print(f"inverse:  {mn.format()}")
    print(f"direct:   {pl.format()}")
    ok = mod.compose(mn, pl) == m
    print(f"recomposes: {ok}")
    return 0 if ok else 1


def cmd_verify(args):
    bound = args.bound
    max_n = args.max_n if args.max_n is not None else (bound if bound else 3)
    max_k = args.max_k if args.max_k is not None else (bound if bound else 3)
    max_v = args.max_vertices if args.max_vertices is not None else \
        (bound if bound else 3)
    max_e = args.max_edges if args.max_edges is not None else 4
    reports = []
    if args.kind == "generalized":
        if args.family not in ("sym", "dao"):
            raise ValueError("generalized verification is for --family sym")
        reports.append(verify.verify_generalized(
            min(max_n, args.max_n if args.max_n is not None else 1),
            max_v, max_e))
    else:
        if args.family == "dad":
            cand = verify.chain_candidate(max_n, max_k, args.probe_degree)
            fast = True
        elif args.family == "dao":
            cand = verify.tree_candidate(max_n, max_v, max_e,
                                         args.probe_degree)
            fast = True
        elif args.family == "delta":
            cand = verify.delta_candidate(max_n, args.probe_degree)
            fast = False
        elif args.family == "omegap":
            cand = verify.omegap_candidate(max_v, max_e, args.probe_degree)
            fast = False
        elif args.family == "sym":
            raise ValueError(
                "the symmetric family only supports `verify generalized`; "
                "no elegance claim is made for it")
        else:
            raise ValueError(f"unknown family {args.family!r}")
        if args.kind == "reedy":
            rep = verify.verify_reedy(cand, jobs=args.jobs)
            if args.family == "dad":
                rep.notes.append(verify.chain_hom_description_note(cand))
            reports.append(rep)
        else:
            reports.append(verify.verify_elegance(cand, fast=fast))
    failed = False
    out_docs = []
    for rep in reports:
        if not args.quiet:
            sys.stdout.write(rep.to_text())
        out_docs.append(json.loads(rep.to_json()))
        failed = failed or not rep.passed
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(out_docs if len(out_docs) > 1 else out_docs[0],
                      fh, sort_keys=True, indent=2)
            fh.write("\n")
    return 1 if failed else 0


def cmd_nerve(args):
    with open(args.action) as fh:
        action = fincat.load_action(fh)
    violations = fincat.check_cat_action(action)
    if violations:
        print("action file violates the axioms:")
        for v in violations:
            print(f"  {v}")
        return 1
    left, right = args.shape.split(":", 1)
    n, k = int(left), int(right)
    cells = nerve.nerve_cells(action, n, k)
    print(f"nerve cells of shape {n}:{k}: {len(cells)}")
    for i, cell in enumerate(cells):
        al = "-".join(cell.alpha.arrows) or str(cell.alpha.objects[0])
        be = "-".join(cell.beta.arrows) or \
            (str(cell.beta.objects[0]) if cell.beta.objects else "()")
        print(f"  [{i}] acting: {al} | acted: {be}")
    if args.dot:
        lines = ["digraph action {"]
        for o in action.acted.objects:
            lines.append(f'  "{o}" [label="{o}\\nmu={action.moment[o]}"];')
        for a in action.acted.arrows:
            if not action.acted.is_identity(a.name):
                lines.append(f'  "{a.src}" -> "{a.tgt}" [label="{a.name}"];')
        lines.append("}")
        print("\n".join(lines))
    return 0


def cmd_export_dot(args):
    kind, obj = parse_object(args.object)
    text = chainact.to_dot(obj) if kind == "chain" else treeact.to_dot(obj)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def make_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="actcat",
        description="finite action categories: construction, morphism "
                    "calculus, and windowed Reedy verification")
    sub = p.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", help="construct an object and print counts")
    b.add_argument("object")
    b.set_defaults(func=cmd_build)

    h = sub.add_parser("hom", help="enumerate a hom-set")
    h.add_argument("src")
    h.add_argument("tgt")
    h.set_defaults(func=cmd_hom)

    c = sub.add_parser("compose", help="compose two enumerated morphisms")
    c.add_argument("src")
    c.add_argument("mid")
    c.add_argument("tgt")
    c.add_argument("i", type=int)
    c.add_argument("j", type=int)
    c.set_defaults(func=cmd_compose)

    f = sub.add_parser("factorize",
                       help="inverse-then-direct factorization of a morphism")
    f.add_argument("src")
    f.add_argument("tgt")
    f.add_argument("index", type=int)
    f.set_defaults(func=cmd_factorize)

    v = sub.add_parser("verify", help="run a windowed verification")
    v.add_argument("kind", choices=["reedy", "elegance", "generalized"])
    v.add_argument("--family", default="dad",
                   choices=["dad", "dao", "sym", "delta", "omegap"])
    v.add_argument("--bound", type=int, default=None,
                   help="shorthand for --max-n/--max-k/--max-vertices")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--max-k", type=int, default=None)
    v.add_argument("--max-vertices", type=int, default=None)
    v.add_argument("--max-edges", type=int, default=None)
    v.add_argument("--probe-degree", type=int, default=10)
    v.add_argument("--json", default=None, help="write the report here")
    v.add_argument("--jobs", type=int, default=1,
                   help="thread pool size for the pair sweep; output is "
                        "independent of this setting")
    v.add_argument("--quiet", action="store_true")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("nerve", help="nerve cells of an action file")
    n.add_argument("--action", required=True)
    n.add_argument("--shape", required=True)
    n.add_argument("--dot", action="store_true")
    n.set_defaults(func=cmd_nerve)

    d = sub.add_parser("export-dot", help="DOT graph of an object")
    d.add_argument("object")
    d.add_argument("--out", default=None)
    d.set_defaults(func=cmd_export_dot)
    return p


def main(argv=None) -> int:
    args = make_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, IndexError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
