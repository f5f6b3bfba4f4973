"""Wall-time scaling of the hafnian recursion.

Times the memoized perfect-matching recursion on random symmetric complex
matrices of growing even dimension and writes the results to CSV. The cost
grows geometrically (roughly 3x per added mode pair in practice), consistent
with the exponential subset recursion.
"""

from tfsim.hafnian import benchmark_csv


def main():
    sizes = (2, 4, 6, 8, 10, 12, 14, 16, 18)
    rows = benchmark_csv("hafnian_bench.csv", sizes, seed=1, repeats=3)
    print(f"{'n':>4} {'seconds':>12} {'ratio':>8}")
    previous = None
    for n, seconds in rows:
        ratio = "" if previous is None else f"{seconds / previous:>8.2f}"
        print(f"{n:>4} {seconds:>12.6f} {ratio:>8}")
        previous = seconds
    print("wrote hafnian_bench.csv")


if __name__ == "__main__":
    main()
