#
# The brute-force side of the library: sampling the Kadison-Schwarz
# inequality and positivity directly, with reproducible witnesses.
#
import numpy as np

from ksq.channels import DiagonalParams, QubitChannel, TensorMap
from ksq.oracle import SampleConfig, ks_violation_search, positivity_violation_search


def main():
    cfg = SampleConfig(n_samples=10000, seed=7)

    print("Transpose channel, Kadison-Schwarz scan:")
    wit = ks_violation_search(QubitChannel.diagonal(DiagonalParams(1, -1, 1)), cfg)
    print(f"  witness input  w = {np.round(wit.x.w, 6)}")
    print(f"  defect eigenvalue {wit.violation:.6f}  (negative: inequality violated)")

    again = ks_violation_search(QubitChannel.diagonal(DiagonalParams(1, -1, 1)), cfg)
    print(f"  rerun with the same seed reproduces it exactly: "
          f"{np.array_equal(wit.x.w, again.x.w) and wit.violation == again.violation}")

    print("\nChannel (0.6, 0.5, 0), the same scan:")
    wit = ks_violation_search(QubitChannel.diagonal(DiagonalParams(0.6, 0.5, 0.0)), cfg)
    print(f"  {'no violation found' if wit is None else wit}")

    print("\nTensor map with an overstretched first axis, positivity scan:")
    m = TensorMap(np.diag([0.8, 0, 0]), np.diag([0.3, 0, 0]))
    wit = positivity_violation_search(m, cfg)
    print(f"  witness input  1 + w.s with w = {np.round(wit.x.w.real, 6)}")
    print(f"  output eigenvalue {wit.violation:.6f}")


if __name__ == "__main__":
    main()
