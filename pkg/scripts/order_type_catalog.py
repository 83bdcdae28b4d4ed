"""Classify every description in the built-in catalog and show both routes
of the totally-bounded test side by side."""

import argparse
import json

from ultrametrics.distsets import description_catalog, tb_distance_set_check


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--json", action="store_true", help="one JSON object per line")
    ap.add_argument("--evidence", action="store_true", help="print the evidence strings")
    args = ap.parse_args()
    for name, desc in description_catalog().items():
        res = tb_distance_set_check(desc)
        row = {
            "name": name,
            "order_type": str(res.order_type),
            "accumulates_at_zero": res.accumulates_at_zero,
            "normal_form": res.normal_form,
            "holds": res.holds,
            "agree": res.agree,
        }
        if args.json:
            print(json.dumps(row))
            continue
        print(f"{name:26} {row['order_type']:17} acc0={res.accumulates_at_zero!s:5} "
              f"normal={res.normal_form!s:5} tb={res.holds!s:5} agree={res.agree}")
        if args.evidence:
            print(f"    {res.evidence}")


if __name__ == "__main__":
    main()
