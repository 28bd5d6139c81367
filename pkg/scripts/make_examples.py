"""Regenerate the example documents in data/ and their manifest.

    python3 scripts/make_examples.py [--out data]
"""

import argparse
from pathlib import Path

import numpy as np

from braided_groupoids import io
from braided_groupoids.constructors import (
    HandyInput,
    NonHandyInput,
    adjoint_actions,
    build_handy_group,
    build_nonhandy,
    trivial_actions,
)
from braided_groupoids.factorization import build_datum, derive_maps
from braided_groupoids.groups import cyclic, enumerate_isomorphisms, parse_ref, subgroup, symmetric
from braided_groupoids.verify import check_c1_c2_c3, verify


def trivial_datum():
    D = cyclic(1)
    V = subgroup(D, [0])
    return build_datum(D, V, V, [0], enumerate_isomorphisms(V, V)[0])


def s3s3_diagonal():
    """``V = S3 x 1`` and ``H`` the diagonal, with the one braided phi."""
    D = parse_ref("S3xS3")
    V = subgroup(D, [a * 6 for a in range(6)])
    H = subgroup(D, [a * 6 + a for a in range(6)])
    for phi in enumerate_isomorphisms(H, V):
        datum = build_datum(D, V, H, [0], phi)
        if check_c1_c2_c3(datum, derive_maps(datum)).ok:
            return datum
    raise AssertionError("no braided phi on the diagonal pair")


def s3s3_broken():
    """A braided S3 x S3 datum with nine objects whose section is then moved
    inside one double coset; c1 and c2 fail."""
    D = parse_ref("S3xS3")
    V = subgroup(D, [0, 1])
    H = subgroup(D, [0, 6])
    phi = next(p for p in enumerate_isomorphisms(H, V))
    good = build_datum(D, V, H, [0, 4, 3, 13, 14, 17, 24, 28, 27], phi)
    assert check_c1_c2_c3(good, derive_maps(good)).ok
    return good.with_gamma([0, 2, 3, 13, 14, 17, 24, 28, 27])


def handy_z2_z3():
    F = cyclic(2)
    L, R = trivial_actions(F)
    P = cyclic(3)
    return HandyInput(F, L, R, P.table, np.zeros((3, 3), int), np.tile(np.arange(3), (2, 1)))


def handy_z2_z3_inversion():
    inp = handy_z2_z3()
    return HandyInput(inp.F, inp.tri_left, inp.tri_right, inp.objects, inp.sigma, [[0, 1, 2], [0, 2, 1]])


def handy_twisted_magma():
    """Non-associative three-element object magma with nontrivial sigma and harpoon."""
    F = cyclic(2)
    L, R = trivial_actions(F)
    objects = [[0, 1, 2], [1, 1, 0], [2, 0, 2]]
    sigma = [[0, 0, 0], [0, 1, 0], [0, 0, 1]]
    return HandyInput(F, L, R, objects, sigma, [[0, 1, 2], [0, 2, 1]])


def handy_s3_adjoint():
    F = symmetric(3)
    L, R = adjoint_actions(F)
    return HandyInput(F, L, R, cyclic(2).table, np.zeros((2, 2), int), np.tile(np.arange(2), (6, 1)))


def nonhandy8():
    A = cyclic(2)
    L, R = trivial_actions(A)
    return NonHandyInput(A, L, R, cyclic(2), [[0, 0], [0, 1]])


def nonhandy_s3():
    """psi(a, b) = s(a) s(b) in Z2, s the sign bit, over S3 with adjoint actions."""
    A = symmetric(3)
    L, R = adjoint_actions(A)
    sign = np.array([0, 1, 1, 0, 0, 1])
    return NonHandyInput(A, L, R, cyclic(2), np.outer(sign, sign))


def documents():
    docs = {
        "trivial.json": (trivial_datum(), "braided"),
        "s3s3_diagonal.json": (s3s3_diagonal(), "braided"),
        "s3s3_broken.json": (s3s3_broken(), "not-braided"),
        "nonhandy8.json": (build_nonhandy(nonhandy8()), "braided"),
        "handy12.json": (build_handy_group(handy_z2_z3()), "braided"),
        "handy_twisted.json": (build_handy_group(handy_twisted_magma()), "braided"),
    }
    no_phi = s3s3_diagonal().with_phi(None)
    docs["s3s3_no_phi.json"] = (no_phi, "not-applicable")
    inputs = {
        "handy12_input.json": handy_z2_z3(),
        "handy12_inversion_input.json": handy_z2_z3_inversion(),
        "handy_twisted_input.json": handy_twisted_magma(),
        "handy_s3_adjoint_input.json": handy_s3_adjoint(),
        "nonhandy8_input.json": nonhandy8(),
        "nonhandy_s3_input.json": nonhandy_s3(),
    }
    return docs, inputs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", type=Path, default=Path(__file__).resolve().parent.parent / "data")
    args = ap.parse_args()
    args.out.mkdir(exist_ok=True)
    docs, inputs = documents()
    manifest = {}
    for name, (datum, expected) in docs.items():
        got = verify(datum).verdict
        assert got == expected, (name, got)
        io.write(args.out / name, io.datum_to_json(datum))
        manifest[name] = {"kind": "datum", "verdict": expected, "objects": datum.n_objects, "order": datum.D.order}
    for name, inp in inputs.items():
        io.write(args.out / name, io.to_json(inp))
        manifest[name] = {"kind": io.to_json(inp)["kind"], "verdict": "braided"}
    io.write(args.out / "manifest.json", manifest)
    print(f"wrote {len(manifest)} documents to {args.out}")


if __name__ == "__main__":
    main()
