"""Phase-precision scaling of the twin-index interferometer.

Optimizes the operating point for each photon total N and compares the three
estimators: the first-moment signal (degenerate for twin inputs), the
second-moment signal, and the Cramer-Rao limit of the full index-difference
distribution. Prints the fitted log-log slope against the shot-noise and
Heisenberg references.
"""

import numpy as np

from tfsim import metrology as mt


def main():
    n_values = tuple(range(2, 21, 2))
    print(f"{'N':>4} {'QFI':>8} {'1/sqrt(QFI)':>12} {'fisher':>12} "
          f"{'jz_squared':>12} {'jz':>8}")
    for n in n_values:
        qfi = mt.quantum_fisher_information(n)
        _, best_fisher = mt.best_precision(n, "fisher")
        _, best_second = mt.best_precision(n, "jz_squared")
        jz = mt.phase_precision(n, 0.9, "jz")
        jz_text = "inf" if jz.degenerate else f"{float(jz):.4f}"
        print(
            f"{n:>4} {qfi:>8.1f} {qfi**-0.5:>12.6f} {float(best_fisher):>12.6f} "
            f"{float(best_second):>12.6f} {jz_text:>8}"
        )

    rows = mt.precision_sweep(n_values, "fisher")
    mt.sweep_to_csv(rows, "precision_sweep.csv")
    print("wrote precision_sweep.csv")

    slope = mt.heisenberg_slope(n_values)
    print(f"fitted log-log slope: {slope:.6f}")
    print("references: shot-noise -1/2, Heisenberg -1")
    print(
        "note: delta-phi = sqrt(2/(N(N+2))) reaches slope -1 only "
        "asymptotically; over N <= 20 the fit gives about -0.88"
    )
    exact = [np.sqrt(2.0 / (n * (n + 2.0))) for n in n_values]
    fitted = [float(r[3]) for r in rows]
    print(f"max |sweep - closed form| = {max(abs(a - b) for a, b in zip(exact, fitted)):.2e}")


if __name__ == "__main__":
    main()
