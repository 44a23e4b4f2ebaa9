"""Command-line interface: inspect Mackey algebras, match blocks, print
Cartan and decomposition matrices, and run the full verification suite.

Exit codes: 0 success, 1 check failure, 2 usage error.  JSON output is
byte-stable for identical configurations (sorted keys, fixed separators).
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import pickle
import sys
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction

import numpy as np

from .chartab import character_of_lift, character_table, Cyc
from .decomp import (defect_one_structure_check, match_up_to_simultaneous_permutation,
                     p_nilpotent_checks, pipeline)
from .exalg import (AlgebraPresentation, is_symmetric_algebra,
                    primitive_idempotents)
from .ffield import GF
from .grp import (build_group, normal_p_complement, p_subgroup_classes,
                  subgroup_lattice)
from .mackey import MackeyAlgebra, build_algebra, phi_automorphism_check
from .modrep import brauer_quotient, permutation_module

SUITE = [("C2", 2), ("C3", 3), ("C4", 2), ("C6", 2), ("C6", 3),
         ("S3", 2), ("S3", 3), ("D4", 2), ("Q8", 2),
         ("A4", 2), ("A4", 3), ("SL(2,3)", 2), ("SL(2,3)", 3)]


def _cache_dir(args):
    return getattr(args, "cache_dir", None) \
        or os.environ.get("MACKEYALG_CACHE_DIR")


def cached_mackey(G, p, cache_dir=None):
    """Mackey algebra with optional on-disk structure cache (performance
    only; a stale or missing cache never changes results)."""
    if not cache_dir:
        return MackeyAlgebra(G, p=p)
    key = hashlib.sha256(G.mult.tobytes() + b"|"
                         + repr(p).encode()).hexdigest()[:24]
    path = os.path.join(cache_dir, f"mu-{key}.pkl")
    if os.path.exists(path):
        try:
            with open(path, "rb") as fh:
                A = pickle.load(fh)
            if A.G.order == G.order and (A.G.mult == G.mult).all():
                return A
        except Exception:
            pass
    A = MackeyAlgebra(G, p=p)
    os.makedirs(cache_dir, exist_ok=True)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        pickle.dump(A, fh)
    os.replace(tmp, path)
    return A


def rational_mu(A):
    """The full Mackey algebra presentation over Q."""
    P = AlgebraPresentation(None, A.dim, A.structure, labels=list(A.basis))
    u = np.empty(A.dim, object)
    u[:] = Fraction(0)
    for i in A.diag_idx.values():
        u[i] = Fraction(1)
    P.unit = u
    return P


def _emit(args, payload, text_lines):
    if args.json:
        print(json.dumps(payload, sort_keys=True, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


# ----------------------------------------------------------------------
# commands

def cmd_info(args):
    G = build_group(args.group)
    lat = subgroup_lattice(G)
    A = build_algebra(G)
    pairs = {}
    for lab in A.basis:
        k = "%d,%d" % (lab[0], lab[3])
        pairs[k] = pairs.get(k, 0) + 1
    payload = {"group": G.name, "order": G.order,
               "subgroups": len(lat.subgroups),
               "subgroup_classes": len(lat.classes),
               "mu_dim": A.dim, "mu_dim_Q": rational_mu(A).dim,
               "basis_pairs": pairs}
    lines = [f"group {G.name} of order {G.order}",
             f"subgroups: {len(lat.subgroups)} in {len(lat.classes)} classes",
             f"dim mu = {A.dim} (over GF(p) and over Q alike)"]
    if args.p:
        A1 = cached_mackey(G, args.p, _cache_dir(args))
        payload["p"] = args.p
        payload["mu1_dim"] = A1.dim
        lines.append(f"dim mu^1 at p={args.p}: {A1.dim}")
    _emit(args, payload, lines)
    return 0


def _pipe(args):
    G = build_group(args.group)
    if not args.p:
        raise ValueError("--p is required for this command")
    return pipeline(G, args.p, field_degree=args.field_degree,
                    mackey=cached_mackey(G, args.p, _cache_dir(args)))


def cmd_blocks(args):
    pipe = _pipe(args)
    bm = pipe.block_match()
    blocks = [{"mu_block": i, "dim": bm.mu_dims[i],
               "group_block": bm.pairing[i],
               "principal": i == bm.principal}
              for i in range(len(bm.mu_idempotents))]
    payload = {"group": pipe.G.name, "p": pipe.p,
               "field": f"GF({pipe.p}^{pipe.degree})", "blocks": blocks}
    lines = [f"{len(blocks)} block pair(s) over GF({pipe.p}^{pipe.degree}):"]
    for b in blocks:
        tag = " (principal)" if b["principal"] else ""
        lines.append(f"  mu-block {b['mu_block']} dim {b['dim']} "
                     f"<-> kG-block {b['group_block']}{tag}")
    _emit(args, payload, lines)
    return 0


def _select_blocks(args, pipe):
    bm = pipe.block_match()
    if args.block is None:
        return list(range(len(bm.mu_idempotents)))
    if args.block == "principal":
        return [bm.principal]
    return [int(args.block)]


def cmd_cartan(args):
    pipe = _pipe(args)
    out = []
    for b in _select_blocks(args, pipe):
        out.append({"block": b, "cartan": pipe.block_cartan(b).tolist()})
    payload = {"group": pipe.G.name, "p": pipe.p,
               "field": f"GF({pipe.p}^{pipe.degree})", "blocks": out}
    lines = []
    for rec in out:
        lines.append(f"block {rec['block']}:")
        for row in rec["cartan"]:
            lines.append("  " + " ".join("%3d" % x for x in row))
    _emit(args, payload, lines)
    return 0


def cmd_decomp(args):
    pipe = _pipe(args)
    dec = pipe.decomposition()
    sel = set(_select_blocks(args, pipe))
    rows = [r for r in range(len(dec.rows)) if dec.row_blocks[r] in sel]
    cols = [c for c in range(len(dec.cols)) if dec.col_blocks[c] in sel]
    lat = pipe.lat
    payload = {
        "group": pipe.G.name, "p": pipe.p,
        "field": f"GF({pipe.p}^{pipe.degree})",
        "rows": [{"dim": dec.rows[r].module.dim,
                  "vertex_order": lat.subgroups[dec.rows[r].vertex_sid].order,
                  "mu_block": dec.row_blocks[r]} for r in rows],
        "cols": [{"L_order": lat.subgroups[dec.cols[c][0]].order,
                  "chi": dec.cols[c][1], "mu_block": dec.col_blocks[c]}
                 for c in cols],
        "matrix": dec.matrix[np.ix_(rows, cols)].tolist()}
    lines = ["rows: " + ", ".join(
        f"(dim {x['dim']}, vx {x['vertex_order']}, blk {x['mu_block']})"
        for x in payload["rows"])]
    lines.append("cols: " + ", ".join(
        f"(L={x['L_order']}, chi{x['chi']})" for x in payload["cols"]))
    for row in payload["matrix"]:
        lines.append("  " + " ".join("%2d" % x for x in row))
    _emit(args, payload, lines)
    return 0


# ----------------------------------------------------------------------
# the verification suite

def check_dim_mu_c2():
    A = build_algebra(build_group("C2"))
    dims = {}
    for name, field in [("GF(2)", GF(2)), ("GF(3)", GF(3))]:
        P = AlgebraPresentation.from_mackey(A, field)
        dims[name] = P.dim
    PQ = rational_mu(A)
    for i in range(PQ.dim):
        v = np.empty(PQ.dim, object)
        v[:] = Fraction(0)
        v[i] = Fraction(1)
        assert (PQ.mul(PQ.unit, v) == v).all() and (PQ.mul(v, PQ.unit) == v).all()
    dims["Q"] = PQ.dim
    assert all(d == 6 for d in dims.values()), dims
    return {"dims": dims}


def check_phi_automorphism():
    detail = phi_automorphism_check()
    assert detail, "phi is not an algebra automorphism"
    return {"pairs_checked": 36}


def check_dim_56():
    pipe = pipeline(build_group("S3"), 2)
    bm = pipe.block_match()
    dim = bm.mu_dims[bm.principal]
    assert dim == 56, dim
    assert sorted(bm.mu_dims) == [25, 56]
    return {"principal_dim": dim, "dims": sorted(bm.mu_dims)}


def check_cartan_mu_c3():
    # for a p-group every subgroup is a p-subgroup, so mu^1 = mu
    pipe = pipeline(build_group("C3"), 3)
    assert pipe.P.dim == build_algebra(build_group("C3")).dim == 7
    cm, _ = pipe.algebra_cartan()
    perm = match_up_to_simultaneous_permutation(
        np.asarray(cm.matrix), np.asarray([[2, 1], [1, 3]]))
    assert perm is not None, cm.matrix
    return {"cartan": np.asarray(cm.matrix).tolist()}


def _sl23_w_block(pipe):
    """The mu-block matched to the kG-block containing the 2-dim simple."""
    F = pipe.F
    bm = pipe.block_match()
    idems, class_of, reps = primitive_idempotents(pipe.kg)
    sizes = [class_of.count(i) for i in range(len(reps))]
    two = [i for i, s in enumerate(sizes) if s == 2]
    assert len(two) == 1, sizes  # over a splitting field dim S = class size
    e = np.asarray(idems[reps[two[0]]])
    hits = [j for j, z in enumerate(bm.kg_idempotents)
            if (pipe.kg.mul(np.asarray(z), e) == e).all()]
    assert len(hits) == 1
    return bm.pairing.index(hits[0])


def check_cartan_sl23():
    pipe = pipeline(build_group("SL(2,3)"), 3)
    b = _sl23_w_block(pipe)
    C = pipe.block_cartan(b)
    perm = match_up_to_simultaneous_permutation(
        C, np.asarray([[3, 2], [2, 3]]))
    assert perm is not None, C
    return {"cartan": C.tolist(), "mu_block": b}


def check_block_bijection():
    out = {}
    for name, p in SUITE:
        G = build_group(name)
        pipe = pipeline(G, p)
        counts = {}
        for deg in sorted({1, pipe.degree}):
            bm = pipeline(G, p, field_degree=deg).block_match()
            counts[f"GF({p}^{deg})"] = len(bm.mu_idempotents)
        out[f"{name}@{p}"] = counts
    return out


def check_cartan_reciprocity():
    out = {}
    for name, p in SUITE:
        rep = pipeline(build_group(name), p).verify_cartan_reciprocity()
        out[f"{name}@{p}"] = [r["rows"] for r in rep]
    return out


def check_symmetric_algebra():
    want = [("C2", GF(2), True), ("C3", GF(3), True), ("C4", GF(2), False)]
    out = {}
    for name, F, expect in want:
        P = AlgebraPresentation.from_mackey(build_algebra(build_group(name)), F)
        got, _ = is_symmetric_algebra(P)
        assert got == expect, (name, got)
        out[name] = got
    return out


def check_defect_one():
    s3 = pipeline(build_group("S3"), 3)
    r1 = defect_one_structure_check(build_group("S3"), 3,
                                    s3.block_match().principal)
    sl = pipeline(build_group("SL(2,3)"), 3)
    r2 = defect_one_structure_check(build_group("SL(2,3)"), 3,
                                    _sl23_w_block(sl))
    assert r1["e"] == 2 and r1["simples"] == 4
    assert r2["e"] == 1 and r2["simples"] == 2
    return {"S3@3": r1, "SL(2,3)@3": r2}


def check_p_nilpotent():
    r1 = p_nilpotent_checks(build_group("S3"), 2)
    r2 = p_nilpotent_checks(build_group("SL(2,3)"), 3)
    assert r1["dim"] == 56
    return {"S3@2": r1, "SL(2,3)@3": r2}


def check_oracle_invariants():
    out = {}
    for name, p in SUITE:
        G = build_group(name)
        pipe = pipeline(G, p)
        lat, F = pipe.lat, pipe.F
        psub = p_subgroup_classes(lat, p)
        # Brauer quotients of permutation modules count fixed points
        for cls in lat.classes:
            sid = cls[0]
            V = permutation_module(G, F, lat.cosact[sid])
            for Q in psub:
                bq = brauer_quotient(V, Q, lat)
                fixed = sum(1 for c in range(V.dim)
                            if all(lat.cosact[sid][q, c] == c
                                   for q in lat.subgroups[Q].members))
                assert bq.module.dim == fixed, (name, sid, Q)
        # characters of lifts equal permutation characters
        ct = character_table(G)
        for cls in lat.classes:
            sid = cls[0]
            V = permutation_module(G, F, lat.cosact[sid])
            psi = character_of_lift(V, p, ct)
            for k, g in enumerate(ct.reps):
                fixed = int((lat.cosact[sid][g]
                             == np.arange(V.dim)).sum())
                assert psi[k] == Cyc.rat(ct.exponent, fixed), (name, sid, k)
        # block dimensions partition the algebra
        bm = pipe.block_match()
        assert sum(bm.mu_dims) == pipe.P.dim
        # decomposition entries are non-negative integers
        dec = pipe.decomposition()
        assert dec.matrix.dtype == np.int64 and (dec.matrix >= 0).all()
        # associativity of the structure constants
        assert pipe.A.verify_associativity(), name
        out[f"{name}@{p}"] = {"mu1_dim": pipe.P.dim,
                              "blocks": len(bm.mu_idempotents)}
    return out


CHECKS = [
    ("dim-mu-c2", check_dim_mu_c2),
    ("phi-automorphism", check_phi_automorphism),
    ("dim-56", check_dim_56),
    ("cartan-mu-c3", check_cartan_mu_c3),
    ("cartan-sl23-block", check_cartan_sl23),
    ("block-bijection", check_block_bijection),
    ("cartan-reciprocity", check_cartan_reciprocity),
    ("symmetric-algebra", check_symmetric_algebra),
    ("defect-one", check_defect_one),
    ("p-nilpotent", check_p_nilpotent),
    ("oracle-invariants", check_oracle_invariants),
]


def run_checks(only=None, workers=4):
    todo = [(n, f) for n, f in CHECKS if only is None or n in only]

    def run_one(item):
        name, fn = item
        t0 = time.time()
        try:
            detail = fn()
            return {"name": name, "status": "pass",
                    "seconds": round(time.time() - t0, 2), "detail": detail}
        except Exception as exc:        # report, never mask
            return {"name": name, "status": "fail",
                    "seconds": round(time.time() - t0, 2),
                    "error": f"{type(exc).__name__}: {exc}"}

    with ThreadPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(run_one, todo))
    return results      # canonical order: CHECKS order regardless of timing


def cmd_verify_paper(args):
    only = set(args.only.split(",")) if args.only else None
    if only:
        unknown = only - {n for n, _ in CHECKS}
        if unknown:
            raise ValueError(f"unknown check(s): {sorted(unknown)}")
    results = run_checks(only=only)
    ok = all(r["status"] == "pass" for r in results)
    payload = {"results": results, "ok": ok}
    lines = [f"{r['name']:<20} {r['status']:<4} {r['seconds']:7.2f}s"
             + ("" if r["status"] == "pass" else "  " + r["error"])
             for r in results]
    lines.append("all checks passed" if ok else "FAILURES present")
    _emit(args, payload, lines)
    return 0 if ok else 1


# ----------------------------------------------------------------------

def make_parser():
    ap = argparse.ArgumentParser(
        prog="mackey",
        description="Exact block and Cartan data of p-local Mackey algebras")
    ap.add_argument("command",
                    choices=["info", "blocks", "cartan", "decomp",
                             "verify-paper"])
    ap.add_argument("--group", help="builtin name (C2, S3, D4, Q8, A4, "
                                    "SL(2,3), AxB) or a group file")
    ap.add_argument("--p", type=int, help="the prime")
    ap.add_argument("--p-local", action="store_true",
                    help="use the p-local algebra (default for block data)")
    ap.add_argument("--block", help="'principal' or a mu-block index")
    ap.add_argument("--field-degree", type=int,
                    help="override the splitting-field degree m of GF(p^m)")
    ap.add_argument("--json", action="store_true")
    ap.add_argument("--only", help="comma-separated check names "
                                   "(verify-paper)")
    ap.add_argument("--cache-dir", help="disk cache directory "
                                        "(or MACKEYALG_CACHE_DIR)")
    return ap


def main(argv=None):
    args = make_parser().parse_args(argv)
    handlers = {"info": cmd_info, "blocks": cmd_blocks,
                "cartan": cmd_cartan, "decomp": cmd_decomp,
                "verify-paper": cmd_verify_paper}
    if args.command != "verify-paper" and not args.group:
        print("error: --group is required", file=sys.stderr)
        return 2
    try:
        return handlers[args.command](args)
    except (ValueError, FileNotFoundError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except AssertionError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
