"""Tour of the two membership tests on a handful of landmark points.

Walks from the center of the correlation box out to the PR box, printing
both verdicts and their margins at each stop.
"""

import math

from corrset import CorrelationVector, evaluate

T = 1.0 / math.sqrt(2.0)

LANDMARKS = [
    ("origin (uncorrelated)", CorrelationVector(0, 0, 0, 0)),
    ("deterministic corner", CorrelationVector(1, 1, 1, 1)),
    ("classical facet point", CorrelationVector(1, 0.5, 0.5, 0)),
    ("Tsirelson point", CorrelationVector(T, T, T, -T)),
    ("just past Tsirelson", CorrelationVector(0.72, 0.72, 0.72, -0.72)),
    ("PR box", CorrelationVector(1, 1, 1, -1)),
]


def main() -> None:
    print(f"{'point':24s} {'in C':>5s} {'in Q':>5s} {'margin C':>12s} {'margin Q':>12s}")
    for name, x in LANDMARKS:
        r = evaluate(x)
        print(
            f"{name:24s} {str(r.in_classical):>5s} {str(r.in_quantum):>5s}"
            f" {r.classical_margin:12.6f} {r.quantum_margin:12.6f}"
        )
    print()
    print("The classical test caps every CHSH combination at 2; the quantum")
    print("test caps every arcsine combination at pi.  Negative margin means")
    print("the binding inequality is violated by that amount.")


if __name__ == "__main__":
    main()
