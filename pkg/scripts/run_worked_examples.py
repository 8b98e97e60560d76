#!/usr/bin/env python3
"""Run the bundled worked scenarios and print compact summaries.

Usage: python3 scripts/run_worked_examples.py
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from fhtp import (
    check_achievability,
    incompleteness_demo,
    maxweight_counterexample,
    parse_scenario,
    verify_policy,
)

SCENARIOS = pathlib.Path(__file__).resolve().parents[1] / "scenarios"


def show(name: str):
    scenario = parse_scenario((SCENARIOS / name).read_text())
    channel = scenario.channel()
    report = check_achievability(channel, scenario.target_rate, scenario.horizon)
    print(f"== {name}")
    print(f"   target {list(scenario.target_rate)} over T={scenario.horizon} slots")
    print(f"   minimum slots: {report.p_star}  achievable: {report.achievable}")
    s = report.stats
    print(
        f"   expanded {s.expanded_nodes}  generated {s.generated_nodes}"
        f"  pruned {s.pruned_nodes}  ebf {s.ebf:.4f}  wall {s.wall_time * 1e3:.1f} ms"
    )
    if report.policy is not None:
        ok = verify_policy(channel, report.policy).ok
        print(f"   policy verification: {'pass' if ok else 'FAIL'}")
        for t, (rate, power) in enumerate(report.policy.pairs):
            rt = np.array2string(np.array(rate), precision=4, suppress_small=True)
            print(f"   slot {t + 1}: rate {rt}  power {[f'{p:g}' for p in power]}")
    print()


def main():
    show("example1.json")
    show("example2.json")
    channel, mu, horizon = maxweight_counterexample()
    demo = incompleteness_demo(channel, mu, horizon)
    print("== max-weight counterexample (2 pairs, one slot)")
    print(f"   target {[float(x) for x in mu]}  quadrant: {demo.quadrant}")
    print(f"   exact check: p*={demo.astar.p_star}  achievable={demo.astar.achievable}")
    picked = demo.max_weight.policy.pairs[0][1]
    print(f"   max-weight picked {picked}, cleared={demo.max_weight.cleared}")


if __name__ == "__main__":
    main()
