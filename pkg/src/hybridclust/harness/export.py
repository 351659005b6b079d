"""CSV / JSON export of run results."""
import csv
import json

from ..errors import IoError
from .runner import RunResult

CSV_COLUMNS = (
    "scenario", "scheme", "snr_db", "n_rf", "q_bits", "mean_R_bps_hz", "power_w",
    "eta", "mean_outer_iters", "mean_inner_iters", "trials", "seed",
)


def _num(x):
    return repr(float(x))


def csv_rows(records):
    for r in records:
        yield [
            r.scenario,
            r.scheme,
            _num(r.snr_db),
            str(r.n_rf),
            "" if r.q_bits is None else str(r.q_bits),
            _num(r.mean_R),
            _num(r.power_watts),
            _num(r.eta),
            _num(r.mean_outer_iters),
            _num(r.mean_inner_iters),
            str(r.trials),
            str(r.seed),
        ]


def write_csv(records, fh, header=True):
    writer = csv.writer(fh, lineterminator="\n")
    if header:
        writer.writerow(CSV_COLUMNS)
    writer.writerows(csv_rows(records))


def export(result, fmt, path):
    """Write one ``RunResult`` (or a list of them) as ``csv`` or ``json``.

    A list is written as concatenated CSV rows under a single header, or as a
    JSON array.
    """
    results = result if isinstance(result, (list, tuple)) else [result]
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            if fmt == "csv":
                write_csv([r for res in results for r in res.records], fh)
            elif fmt == "json":
                payload = [r.to_dict() for r in results]
                json.dump(payload if isinstance(result, (list, tuple)) else payload[0], fh, indent=1)
                fh.write("\n")
            else:
                raise ValueError(f"unknown export format {fmt!r}")
    except OSError as exc:
        raise IoError(f"cannot write {path}: {exc}") from exc


def read_json(path):
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise IoError(f"cannot read {path}: {exc}") from exc
    if isinstance(payload, list):
        return [RunResult.from_dict(p) for p in payload]
    return RunResult.from_dict(payload)
