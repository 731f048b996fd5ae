import csv
import io
import json
import logging
import sys
from collections.abc import Callable, Iterable, Sequence
from multiprocessing import Pool
from pathlib import Path
from typing import Any, TypeVar

from pydantic import BaseModel

from codestab.schemas.experiment import ExperimentReport, ExperimentSpec
from codestab.types import OutputFormat

logger = logging.getLogger("codestab.api.output")

T = TypeVar("T")
R = TypeVar("R")


class OutputController:
    """
    Controller for report serialization and for fanning grid points out to workers.
    """

    @staticmethod
    def write_text(text: str, out: str | None) -> None:
        if out is None:
            sys.stdout.write(text)
            return
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text)
        logger.info(f"wrote {out}")

    @staticmethod
    def report_json(spec: ExperimentSpec, result: Any) -> str:
        """
        JSON report embedding the input spec.

        Args:
            spec (ExperimentSpec): The run's provenance record.
            result (Any): A pydantic model, or plain data containing models.

        Returns:
            str: Indented JSON with sorted keys, so equal inputs give equal bytes.
        """
        payload = ExperimentReport(spec=spec, result=result).model_dump(mode="json")
        return json.dumps(payload, indent=2, sort_keys=True) + "\n"

    @staticmethod
    def rows_csv(rows: Sequence[BaseModel | dict[str, Any]]) -> str:
        """
        CSV with one column per field of the first row.

        Args:
            rows (Sequence[BaseModel | dict[str, Any]]): Rows in output order.

        Returns:
            str: CSV text; list-valued cells are joined with ';'.
        """
        records = [r.model_dump(mode="json") if isinstance(r, BaseModel) else dict(r) for r in rows]
        if not records:
            return ""
        buffer = io.StringIO()
        writer = csv.DictWriter(buffer, fieldnames=list(records[0]), lineterminator="\n")
        writer.writeheader()
        for record in records:
            writer.writerow(
                {k: ";".join(map(str, v)) if isinstance(v, list) else v for k, v in record.items()}
            )
        return buffer.getvalue()

    @staticmethod
    def emit(
        spec: ExperimentSpec,
        result: Any,
        fmt: OutputFormat,
        out: str | None,
        rows: Sequence[BaseModel | dict[str, Any]] | None = None,
    ) -> None:
        """
        Write ``result`` as JSON, or ``rows`` as CSV when the format asks for it.

        Args:
            spec (ExperimentSpec): Provenance record embedded in JSON output.
            result (Any): Structured result.
            fmt (OutputFormat): ``json`` or ``csv``.
            out (str | None): Destination path; stdout when None.
            rows (Sequence | None): Tabular form of the result for CSV output.
        """
        if fmt == "csv" and rows is not None:
            OutputController.write_text(OutputController.rows_csv(rows), out)
        else:
            OutputController.write_text(OutputController.report_json(spec, result), out)

    @staticmethod
    def map_points(func: Callable[[T], R], items: Iterable[T], threads: int) -> list[R]:
        """
        Apply ``func`` to every item, in a process pool when ``threads > 1``.

        Args:
            func (Callable): A module-level function (it must pickle).
            items (Iterable): Work items.
            threads (int): Worker count.

        Returns:
            list: Results in input order.
        """
        items = list(items)
        if threads <= 1 or len(items) <= 1:
            return [func(item) for item in items]
        with Pool(processes=min(threads, len(items))) as pool:
            return pool.map(func, items)
