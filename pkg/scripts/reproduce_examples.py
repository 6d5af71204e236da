#!/usr/bin/env python3
"""Reference example checks for canweight.

Runs every named polynomial in canweight.fixtures through the library and
compares the results with the recorded values.

Usage:
    python scripts/reproduce_examples.py
"""

import os
import sys
import time
from datetime import datetime
from fractions import Fraction

# Add parent directory to path for imports
sys.path.insert(0, os.path.dirname(os.path.dirname(__file__)))

from dotenv import load_dotenv
load_dotenv()


def print_header(text: str):
    print("\n" + "=" * 60)
    print(f" {text}")
    print("=" * 60)


def print_test(name: str, passed: bool, details: str = ""):
    status = "PASS" if passed else "FAIL"
    print(f"\n{status}: {name}")
    if details:
        print(f"   Details: {details[:200]}{'...' if len(details) > 200 else ''}")


def main():
    from canweight import (
        CanweightError,
        absolutely_minimal,
        canonical_weight_verdict,
        classify,
        discrepancies,
        essential_cone,
        is_f_minimal,
        leading_coefficient,
        quasi_reduced,
        simultaneous_report,
        surface_triad_weight,
        three_ones_report,
    )
    from canweight.fixtures import COUNTEREXAMPLE, SURFACE_TRIAD, TOMARI, TYPE_T, WATANABE, WATANABE_PARTNER

    print_header("canweight - reference examples")
    print(f"Timestamp: {datetime.now().isoformat()}")

    results = {
        "passed": 0,
        "failed": 0,
        "tests": []
    }

    def record_test(name: str, passed: bool, details: str = ""):
        print_test(name, passed, details)
        results["tests"].append({"name": name, "passed": passed, "details": details})
        if passed:
            results["passed"] += 1
        else:
            results["failed"] += 1

    # ==========================================================================
    # Counterexample without an absolutely minimal vector
    # ==========================================================================
    print_header("Counterexample")

    try:
        start = time.perf_counter()
        f = COUNTEREXAMPLE.support()
        expected = COUNTEREXAMPLE.expected
        label = classify(f).label.value
        record_test("classification", label == expected["label"], label)

        cone = essential_cone(f)
        for weight, member in expected["members"].items():
            record_test(f"{weight} in essential cone is {member}", cone.contains(weight) is member)

        abs_min = absolutely_minimal(cone)
        record_test("no absolutely minimal vector", abs_min is None, str(abs_min))

        lead = leading_coefficient(expected["blowup"])
        record_test("leading coefficient", lead == expected["leading_coefficient"], str(lead))

        (record,) = discrepancies(expected["blowup"], f, [expected["divisor"]])
        record_test(
            f"discrepancy of {expected['divisor']}",
            record.m_q == expected["divisor_m"],
            f"chart {record.chart}, m = {record.m_q}",
        )
        elapsed = time.perf_counter() - start
        record_test("counterexample under one second", elapsed < 1.0, f"{elapsed:.3f}s")
    except CanweightError as e:
        record_test("counterexample suite", False, str(e))

    # ==========================================================================
    # Surface triad
    # ==========================================================================
    print_header("Surface triad")

    for fixture in SURFACE_TRIAD:
        try:
            triad = surface_triad_weight(fixture.support())
            expected = fixture.expected["abs_min"]
            record_test(
                f"{fixture.name}: abs-min {expected}",
                triad.weight is not None and triad.weight.coords == expected and triad.in_triad,
                str(triad.weight),
            )
        except CanweightError as e:
            record_test(fixture.name, False, str(e))

    # ==========================================================================
    # Two f-minimal weights
    # ==========================================================================
    print_header("Double canonical weights")

    for fixture in TOMARI:
        f = fixture.support()
        for weight in fixture.expected["f_minimal"]:
            try:
                decided, certificate = is_f_minimal(weight, f)
                record_test(f"{fixture.name}: {weight} f-minimal", decided, certificate.reason)
            except CanweightError as e:
                record_test(f"{fixture.name}: {weight}", False, str(e))

    # ==========================================================================
    # Simultaneous canonical modification
    # ==========================================================================
    print_header("Simultaneous canonical modification")

    g = WATANABE_PARTNER.support()
    for fixture in WATANABE:
        try:
            f = fixture.support()
            verdict = canonical_weight_verdict(f)
            weights = [w.coords for w in verdict.canonical_weights]
            record_test(
                f"{fixture.name}: canonical weight",
                weights == [fixture.expected["abs_min"]],
                str(weights),
            )
            report = simultaneous_report(f, g, fixture.expected["abs_min"])
            record_test(f"{fixture.name}: simultaneous report", report.positive, report.verdict)
        except CanweightError as e:
            record_test(fixture.name, False, str(e))

    # ==========================================================================
    # Type T
    # ==========================================================================
    print_header("Type T batch")

    for fixture in TYPE_T:
        try:
            f = fixture.support()
            below_one = sum(Fraction(1, a) for a in fixture.expected["type_t"]) < 1
            abs_min = absolutely_minimal(essential_cone(f))
            record_test(
                fixture.name,
                below_one and quasi_reduced(f) and abs_min is not None,
                str(abs_min),
            )
        except CanweightError as e:
            record_test(fixture.name, False, str(e))

    # ==========================================================================
    # Three ones
    # ==========================================================================
    print_header("Three ones")

    report = three_ones_report(12)
    record_test(
        "weights with sum/prod > 3/2 have three unit entries",
        report.holds,
        f"{report.count} weights, offenders: {list(report.offenders)}",
    )

    # ==========================================================================
    # Summary
    # ==========================================================================
    print_header("Summary")

    total = results["passed"] + results["failed"]
    print(f"\nTotal checks: {total}")
    print(f"Passed: {results['passed']}")
    print(f"Failed: {results['failed']}")
    print(f"Success Rate: {(results['passed']/total*100):.1f}%")

    if results["failed"] > 0:
        print("\nSome checks failed. See the details above.")
        return 1
    else:
        print("\nAll checks passed!")
        return 0


if __name__ == "__main__":
    sys.exit(main() or 0)
