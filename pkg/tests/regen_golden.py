"""Rewrite the golden files under tests/golden. Run only after reviewing a deliberate change."""

from pathlib import Path

from ehpkit import TableParams, render_table, run

GOLDEN = Path(__file__).parent / "golden"

TABLES = {
    "ehp_n2_q1_v0_8x4.txt": (TableParams(2, 1, 0), 8, 4, "text"),
    "ehp_n2_q0_v0_20x10.csv": (TableParams(2, 0, 0), 20, 10, "csv"),
    "ehp_n2_q1_v2_20x10.csv": (TableParams(2, 1, 2), 20, 10, "csv"),
    "ehp_n3_q1_v1_20x10.csv": (TableParams(3, 1, 1), 20, 10, "csv"),
    "ehp_trunc_n2_n5_q1_v2_20x10.csv": (TableParams(2, 1, 2, n2=5), 20, 10, "csv"),
    "ehp_n2_q1_v2_6x3.json": (TableParams(2, 1, 2), 6, 3, "json"),
}

CLI = {
    "cli_verify_example.txt": ["verify", "example-6-5"],
    "cli_james_s2_n3.json": ["--format", "json", "james", "homology", "--space", "s2", "--n", "3", "--cap", "6"],
    "cli_stable_diag.csv": ["--format", "csv", "stable", "diag", "--n", "2", "--q", "1", "--imax", "10", "--primes", "all"],
}


def render_cli(argv):
    import io

    buf = io.StringIO()
    run(argv, out=buf, err=io.StringIO())
    return buf.getvalue()


def main():
    GOLDEN.mkdir(exist_ok=True)
    for name, (params, rows, cols, fmt) in TABLES.items():
        (GOLDEN / name).write_text(render_table(params, rows, cols, fmt), encoding="utf-8")
    for name, argv in CLI.items():
        (GOLDEN / name).write_text(render_cli(argv), encoding="utf-8")


if __name__ == "__main__":
    main()
