"""Searches behind the less obvious facts used by the test suite.

    python scripts/search_counterexamples.py [--seed N] [--trials N] [--what NAME ...]

direct-sums     tri-Leibniz violations of the copy-summing brackets on VP4 and N2
self-action     action families that fail for an algebra acting on itself
differentials   random square-zero derivations and whether their brackets are tri-Leibniz
conjugation     conjugating id on VP4 by its signed permutation automorphisms
"""
import argparse
import random
import time
from dataclasses import dataclass, field
from itertools import permutations

import numpy as np

from leibtensor import corpus
from leibtensor.deformation import conjugate_et
from leibtensor.dialgebra import check_action
from leibtensor.exact import identity, matmul, zeros
from leibtensor.leibniz3 import ThreeLeibnizAlgebra, adjoint_rep
from leibtensor.trileibniz import check_derivation, check_tri_leibniz, direct_sum_tri, from_differential

SEARCHES = ("direct-sums", "self-action", "differentials", "conjugation")


@dataclass
class SearchConfig:
    seed: int = 0
    trials: int = 2000
    what: list = field(default_factory=lambda: list(SEARCHES))


def lie3(n, generators) -> ThreeLeibnizAlgebra:
    """Antisymmetric bracket with [e_i,e_j,e_k] = v for each ((i,j,k), out, v) generator."""
    c = zeros((n,) * 4)
    for (i, j, k), out, v in generators:
        for p in permutations(range(3)):
            idx = tuple((i, j, k)[q] for q in p)
            c[idx + (out,)] = corpus.perm_sign(p) * v
    return ThreeLeibnizAlgebra(c)


def direct_sums(cfg):
    for name, alg in (("vp4", corpus.vp4()), ("n2", corpus.n2()), ("n3", corpus.n3())):
        for k in (1, 2, 3):
            report = check_tri_leibniz(direct_sum_tri(alg, k), cap=1)
            print(f"{name} x{k}: {report.total} violations")


def self_action(cfg):
    for name in ("vp4", "n2", "n3"):
        report = check_action(corpus.self_action(getattr(corpus, name)()), cap=1)
        print(f"{name}: {report.summary()}")


def differentials(cfg):
    rng = random.Random(cfg.seed)
    algebras = {
        "n2": corpus.n2(), "n3": corpus.n3(), "vp4": corpus.vp4(),
        "h4": lie3(4, [((0, 1, 2), 3, 1)]),
        "h5": lie3(5, [((0, 1, 2), 4, 1), ((0, 1, 3), 4, 1)]),
    }
    for name, alg in algebras.items():
        n = alg.dim
        found, nonzero, failing = 0, 0, 0
        for _ in range(cfg.trials):
            d = zeros((n, n))
            for _ in range(rng.randint(1, 3)):
                d[rng.randrange(n), rng.randrange(n)] = rng.choice([1, -1, 2])
            if np.any(matmul(d, d) != 0) or not check_derivation(d, alg, cap=1).passed:
                continue
            found += 1
            tri = from_differential(alg, d)
            if any(np.any(tri.bracket(b) != 0) for b in ("left", "middle", "right")):
                nonzero += 1
                failing += not check_tri_leibniz(tri, cap=1).passed
        print(f"{name}: {found} square-zero derivations, {nonzero} with nonzero brackets, {failing} not tri-Leibniz")


def conjugation(cfg):
    vp4 = corpus.vp4()
    rep = adjoint_rep(vp4)
    autos = corpus.signed_permutation_automorphisms(vp4)
    ok = sum(conjugate_et(identity(4), phi, phi, vp4, rep)[1].passed for phi in autos)
    print(f"vp4: {len(autos)} signed permutation automorphisms, {ok} conjugates pass")


def run(cfg: SearchConfig):
    for name in cfg.what:
        start = time.perf_counter()
        print(f"== {name}")
        globals()[name.replace("-", "_")](cfg)
        print(f"({time.perf_counter() - start:.1f} s)")


def parse(argv=None) -> SearchConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=2000)
    p.add_argument("--what", nargs="+", choices=SEARCHES, default=list(SEARCHES))
    a = p.parse_args(argv)
    return SearchConfig(a.seed, a.trials, a.what)


if __name__ == "__main__":
    run(parse())
