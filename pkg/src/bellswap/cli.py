"""Command-line client for the bellswap service.

Each subcommand issues one request against the HTTP API and renders the
response as a JSON report or CSV rows. By default the requests run
against the application in process, so no server is needed; pass --url
to talk to a remote instance instead. Exit status is 0 when every check
in the emitted report passes, 1 on a failed check, and 2 on usage or
transport errors.
"""
from __future__ import annotations

import argparse
import asyncio
import csv
import io
import json
import sys

import httpx

from .service import create_app

JSON_INDENT = 2
SIGN_COLUMNS = ("zz13", "xx13", "zx24", "xz24")


class ServiceError(RuntimeError):
    """Raised when the service rejects a request or cannot be reached."""


def _sign_text(sign: int) -> str:
    return f"{sign:+d}"


def _float_text(value: float) -> str:
    # Fixed six decimal places keeps CSV output byte-stable across runs.
    return f"{value:.6f}"


def _bool_text(flag: bool) -> str:
    return "true" if flag else "false"


def _parse_outcome(text: str) -> list[int]:
    tokens = text.split(",")
    if len(tokens) != 4:
        raise argparse.ArgumentTypeError(
            f"outcome needs four comma-separated signs, got {text!r}"
        )
    signs = []
    for token in tokens:
        token = token.strip()
        if token not in ("+1", "-1", "1"):
            raise argparse.ArgumentTypeError(
                f"outcome signs must be +1 or -1, got {token!r}"
            )
        signs.append(1 if token in ("+1", "1") else -1)
    return signs


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _uint64(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError(f"seed must fit in 64 unsigned bits, got {text}")
    return value


async def _asgi_request(method: str, path: str, payload):
    transport = httpx.ASGITransport(app=create_app())
    async with httpx.AsyncClient(transport=transport, base_url="http://bellswap") as client:
        return await client.request(method, path, json=payload)


def _request(url: str | None, method: str, path: str, payload=None) -> dict:
    if url:
        with httpx.Client(base_url=url, timeout=120.0) as client:
            response = client.request(method, path, json=payload)
    else:
        response = asyncio.run(_asgi_request(method, path, payload))
    if response.status_code != 200:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise ServiceError(f"request failed ({response.status_code}): {detail}")
    return response.json()


def _emit_report(command: str, inputs: dict, results: dict, passed: bool) -> None:
    report = {"command": command, "inputs": inputs, "results": results, "pass": passed}
    sys.stdout.write(json.dumps(report, indent=JSON_INDENT) + "\n")


def _csv_writer():
    buffer = io.StringIO()
    return buffer, csv.writer(buffer, lineterminator="\n")


def _emit_table_csv(cells: list[dict], value_key: str, extra: tuple[str, ...]) -> None:
    buffer, writer = _csv_writer()
    writer.writerow([*SIGN_COLUMNS, value_key, *extra])
    for cell in cells:
        row = [_sign_text(s) for s in cell["signs"]]
        row.append(_float_text(cell[value_key]))
        for column in extra:
            value = cell[column]
            row.append(_bool_text(value) if isinstance(value, bool) else _float_text(value))
        writer.writerow(row)
    sys.stdout.write(buffer.getvalue())


def cmd_table1(args) -> int:
    results = _request(args.url, "GET", "/table1")
    if args.format == "csv":
        _emit_table_csv(results["cells"], "probability", ("expected", "pass"))
    else:
        _emit_report("table1", {"format": args.format}, results, results["all_pass"])
    return 0 if results["all_pass"] else 1


def cmd_verify(args) -> int:
    results = _request(args.url, "GET", "/verify")
    if args.format == "csv":
        buffer, writer = _csv_writer()
        writer.writerow(["property", "computed", "expected", "tolerance", "pass"])
        for report in results["reports"]:
            writer.writerow(
                [
                    report["property"],
                    ";".join(_float_text(v) for v in report["computed"]),
                    ";".join(_float_text(v) for v in report["expected"]),
                    f"{report['tolerance']:g}",
                    _bool_text(report["pass"]),
                ]
            )
        sys.stdout.write(buffer.getvalue())
    else:
        _emit_report("verify", {"format": args.format}, results, results["all_pass"])
    return 0 if results["all_pass"] else 1


def cmd_lhv(args) -> int:
    payload = {"outcome": args.outcome}
    results = _request(args.url, "POST", "/lhv", payload)
    if args.format == "csv":
        buffer, writer = _csv_writer()
        writer.writerow(["field", "value"])
        writer.writerow(["outcome", " ".join(_sign_text(s) for s in results["outcome"])])
        writer.writerow(["classification", results["classification"]])
        writer.writerow(["satisfying_count", results["satisfying_count"]])
        writer.writerow(["parity_product", results["parity_product"]])
        writer.writerow(["parity_applicable", _bool_text(results["parity_applicable"])])
        writer.writerow(["feasible", _bool_text(results["feasible"])])
        writer.writerow(["pass", _bool_text(results["pass"])])
        for i, constraint in enumerate(results["constraints"]):
            expression = "*".join(constraint["labels"])
            writer.writerow(
                [f"constraint_{i}", f"{expression}={_sign_text(constraint['required_sign'])}"]
            )
        sys.stdout.write(buffer.getvalue())
    else:
        _emit_report("lhv", {"format": args.format, "outcome": args.outcome}, results, results["pass"])
    return 0 if results["pass"] else 1


def cmd_sample(args) -> int:
    payload = {
        "runs": args.runs,
        "seed": args.seed,
        "order": args.order,
        "include_records": args.records is not None,
    }
    results = _request(args.url, "POST", "/sample", payload)
    records = results.pop("records", None)
    if args.records is not None:
        _write_records(args.records, records or [], args.format)
    if args.format == "csv":
        _emit_table_csv(results["cells"], "frequency", ("expected",))
    else:
        inputs = {
            "format": args.format,
            "runs": args.runs,
            "seed": args.seed,
            "order": args.order,
        }
        _emit_report("sample", inputs, results, results["pass"])
    return 0 if results["pass"] else 1


def _write_records(path: str, records: list[dict], fmt: str) -> None:
    if fmt == "csv":
        buffer, writer = _csv_writer()
        writer.writerow(["run", *SIGN_COLUMNS, "classification"])
        for record in records:
            writer.writerow(
                [
                    record["run"],
                    *(_sign_text(s) for s in record["alice_outcome"]),
                    *(_sign_text(s) for s in record["bob_outcome"]),
                    record["classification"],
                ]
            )
        text = buffer.getvalue()
    else:
        lines = [json.dumps(record) for record in records]
        text = "\n".join(lines) + "\n" if lines else ""
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def cmd_decompose(args) -> int:
    results = _request(args.url, "GET", "/decompose")
    if args.format == "csv":
        buffer, writer = _csv_writer()
        writer.writerow(["first", "second", "coefficient", "magnitude", "nonzero"])
        for entry in results["coefficients"]:
            writer.writerow(
                [
                    entry["first"],
                    entry["second"],
                    _float_text(entry["value"]),
                    _float_text(entry["magnitude"]),
                    _bool_text(entry["nonzero"]),
                ]
            )
        sys.stdout.write(buffer.getvalue())
    else:
        _emit_report("decompose", {"format": args.format}, results, results["pass"])
    return 0 if results["pass"] else 1


def cmd_serve(args) -> int:
    import uvicorn

    uvicorn.run("bellswap.service:app", host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bellswap",
        description="Verify the joint-measurement statistics of two singlets "
        "and certify that no local value assignment reproduces them.",
    )
    parser.add_argument(
        "--format", choices=("json", "csv"), default="json", help="output format"
    )
    parser.add_argument(
        "--url", default=None, help="base URL of a running service (default: in-process)"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("table1", help="16-cell joint outcome distribution")
    p.set_defaults(handler=cmd_table1)

    p = sub.add_parser("verify", help="check all verified properties")
    p.set_defaults(handler=cmd_verify)

    p = sub.add_parser("lhv", help="certify a local-value constraint system")
    p.add_argument(
        "--outcome",
        type=_parse_outcome,
        default=None,
        help="four comma-separated signs, e.g. +1,+1,+1,-1",
    )
    p.set_defaults(handler=cmd_lhv)

    p = sub.add_parser("sample", help="Monte Carlo runs of the experiment")
    p.add_argument("--runs", type=_positive_int, required=True)
    p.add_argument("--seed", type=_uint64, required=True)
    p.add_argument("--order", choices=("alice-first", "bob-first"), default="alice-first")
    p.add_argument("--records", default=None, help="write per-run records to this file")
    p.set_defaults(handler=cmd_sample)

    p = sub.add_parser("decompose", help="Bell-basis coefficients of the source state")
    p.set_defaults(handler=cmd_decompose)

    p = sub.add_parser("serve", help="run the HTTP service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(handler=cmd_serve)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse has already written the usage message
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except ServiceError as exc:
        print(f"bellswap: {exc}", file=sys.stderr)
        return 2
    except httpx.HTTPError as exc:
        print(f"bellswap: transport error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
