import io

import orjson
import pandas as pd

from boostfuse.features.emit import (
    correlation_matrix_to_csv,
    report_to_csv,
    report_to_json,
)
from boostfuse.schema.report.correlation import (
    CorrelationEntry,
    CorrelationReport,
    SecondOrderLink,
    Strength,
)

REPORT = CorrelationReport(
    target='y',
    entries=[
        CorrelationEntry(
            feature='w',
            r=0.1,
            strength=Strength.weak,
            n=5,
            indirectly_relevant=True,
        ),
        CorrelationEntry(feature='flat', n=5, degenerate=True),
        CorrelationEntry(feature='s', r=-0.8, strength=Strength.strong, n=5),
    ],
    second_order={'w': [SecondOrderLink(feature='s', r=0.75)]},
)


def test_report_csv_is_ranked() -> None:
    sink = io.StringIO()
    report_to_csv(REPORT, sink)

    assert sink.getvalue().splitlines() == [
        'feature,r,strength,flags',
        's,-0.8,Strong,',
        'w,0.1,Weak,indirectly_relevant',
        'flat,,,degenerate',
    ]


def test_report_csv_keeps_given_selection_order() -> None:
    sink = io.StringIO()
    report_to_csv(REPORT, sink, ['w', 's'])

    frame = pd.read_csv(io.StringIO(sink.getvalue()))
    assert frame['feature'].tolist() == ['w', 's']


def test_report_json_carries_links() -> None:
    document = orjson.loads(report_to_json(REPORT))

    assert document['target'] == 'y'
    assert [e['feature'] for e in document['entries']] == ['s', 'w', 'flat']
    assert document['entries'][0]['strength'] == 'Strong'
    assert document['second_order'] == {'w': [{'feature': 's', 'r': 0.75}]}


def test_correlation_matrix_csv() -> None:
    sink = io.StringIO()
    correlation_matrix_to_csv(
        {'a': {'a': 1.0, 'y': 0.5}, 'y': {'a': 0.5, 'y': 1.0}}, sink
    )

    assert sink.getvalue().splitlines() == [
        'feature,a,y',
        'a,1.0,0.5',
        'y,0.5,1.0',
    ]
