#!/usr/bin/env python3
"""Experiment: how the Sweedler-hom support thins out as the target
metric space tightens.

For a fixed random source metric on 3 points over tropical(N), sweep a
scale on the target distances and report how many of the 27 self-maps
stay nonexpansive (equivalently, keep a non-bottom hom entry).

    python3 scripts/explore_sweedler.py [--seed N] [--cut N]
"""
import argparse
import random

from quantale_engine.base import tropical
from quantale_engine.enrichment import sweedler_hom
from quantale_engine.randgen import random_tropical_metric
from quantale_engine.structures import VGraph, free_category
from quantale_engine.vmat import VMat


def scaled_metric(q, metric, factor):
    scaled = [
        [min(v * factor, q.n - 2) if v not in (q.unit, q.bottom) else v
         for v in row]
        for row in metric.carrier.entries
    ]
    return free_category(VGraph(VMat(q, metric.objects, metric.objects,
                                     scaled)))


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--cut", type=int, default=24)
    args = parser.parse_args()

    q = tropical(args.cut)
    rng = random.Random(args.seed)
    source = random_tropical_metric(rng, q, 3)
    print("source metric rows:",
          [[q.name(v) for v in row] for row in source.carrier.entries])
    print(f"{'scale':>6} {'nonexpansive maps':>18}")
    for factor in (1, 2, 3, 4, 6, 8):
        target = scaled_metric(q, source, factor)
        t = sweedler_hom(source, target)
        print(f"{factor:>6} {len(t.support()):>18}")


if __name__ == "__main__":
    main()
