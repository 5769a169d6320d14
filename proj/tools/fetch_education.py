"""Write the CollegeDistance table as CSV without its row-name column.

The table comes from the `rdatasets` pip package when it is installed and
from the Rdatasets web mirror otherwise.
"""

import argparse
import csv
import io
import urllib.request

URL = "https://vincentarelbundock.github.io/Rdatasets/csv/AER/CollegeDistance.csv"


def from_package():
    import rdatasets

    df = rdatasets.data("AER", "CollegeDistance")
    df = df.drop(columns=[c for c in ("rownames",) if c in df.columns])
    return [list(map(str, df.columns))] + df.astype(str).values.tolist()


def from_url(url):
    with urllib.request.urlopen(url) as r:
        rows = list(csv.reader(io.StringIO(r.read().decode("utf-8"))))
    keep = [i for i, h in enumerate(rows[0]) if h not in ("", "rownames")]
    return [[row[i] for i in keep] for row in rows]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", default="CollegeDistance.csv")
    ap.add_argument("--url", default=URL)
    args = ap.parse_args()
    try:
        rows = from_package()
    except ImportError:
        rows = from_url(args.url)
    with open(args.out, "w", newline="") as f:
        csv.writer(f).writerows(rows)
    print(f"{args.out}: {len(rows) - 1} rows, {len(rows[0])} columns")


if __name__ == "__main__":
    main()
