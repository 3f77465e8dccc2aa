"""Print the smallest and largest meeting times for each (n, d) as a CSV table."""

import argparse
import csv
import sys

from treewalk import verify


def main(argv=None) -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=10)
    args = p.parse_args(argv)
    w = csv.writer(sys.stdout)
    w.writerow(["n", "d", "trees", "tmeet_min", "min_family", "tmeet_max", "max_family"])
    for n in range(4, args.max_n + 1):
        for d in range(3, n):
            lo, hi = verify.verify_min(n, d), verify.verify_max(n, d)
            w.writerow([n, d, lo.trees_scanned, lo.to_dict()["tmeet"], lo.expected_family, hi.to_dict()["tmeet"], hi.expected_family])


if __name__ == "__main__":
    main()
