from typing import Dict, Optional, Sequence, TextIO

import orjson
import pandas as pd

from boostfuse.features.report import rank_entries
from boostfuse.schema.report.correlation import CorrelationReport


def report_to_csv(
    report: CorrelationReport,
    sink: TextIO,
    features: Optional[Sequence[str]] = None,
) -> None:
    """Ranked report; with ``features`` only those rows, in that order."""
    if features is None:
        entries = rank_entries(report.entries)
    else:
        entries = [report.entry(name) for name in features]
    frame = pd.DataFrame(
        [
            {
                'feature': entry.feature,
                'r': entry.r,
                'strength': entry.strength.value if entry.strength else '',
                'flags': ';'.join(entry.flags()),
            }
            for entry in entries
        ],
        columns=['feature', 'r', 'strength', 'flags'],
    )
    frame.to_csv(sink, index=False, lineterminator='\n')


def report_to_json(report: CorrelationReport) -> bytes:
    ranked = report.model_copy(
        update={'entries': rank_entries(report.entries)}
    )
    return orjson.dumps(
        ranked.model_dump(mode='json'),
        option=orjson.OPT_INDENT_2 | orjson.OPT_APPEND_NEWLINE,
    )


def correlation_matrix_to_csv(
    table: Dict[str, Dict[str, Optional[float]]], sink: TextIO
) -> None:
    names = list(table)
    frame = pd.DataFrame(
        [[table[row][column] for column in names] for row in names],
        index=pd.Index(names, name='feature'),
        columns=names,
    )
    frame.to_csv(sink, lineterminator='\n')
