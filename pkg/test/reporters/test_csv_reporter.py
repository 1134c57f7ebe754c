import argparse
import pytest
import tempfile
import os.path

from evidence import setup_args
from evidence.reporters import CSVReporter

def fn(data):
    return data['rows']

def test__basic():
    with tempfile.TemporaryDirectory() as d:
        r = CSVReporter(name='foo', row_fn=fn, headings=('a', 'b'), delimiter=',')
        path = os.path.join(d, 'output.csv')
        f = open(path, 'w')
        r.setup(foo_csv_output=f)
        r.on_completion({'rows': [(1, 0.5), (2, 1 / 3)]})
        assert f.closed
        with open(path) as f:
            assert f.read() == """\
a,b
1,0.5
2,0.333333333333
"""

def test__generator_rows():
    with tempfile.TemporaryDirectory() as d:
        r = CSVReporter(name='foo', row_fn=lambda data: ((x, x * x) for x in data), option='out')
        path = os.path.join(d, 'output.csv')
        r.setup(out=open(path, 'w'))
        r.on_completion([1, 2, 3])
        with open(path) as f:
            assert f.read().splitlines() == ['1,1', '2,4', '3,9']

def test__single_row():
    with tempfile.TemporaryDirectory() as d:
        r = CSVReporter(name='foo', row_fn=lambda data: ('x', data))
        path = os.path.join(d, 'output.csv')
        r.setup(foo_csv_output=open(path, 'w'))
        r.on_completion(0.1)
        with open(path) as f:
            assert f.read().strip() == 'x,0.1'

def test__disabled_without_a_file():
    r = CSVReporter(name='foo', row_fn=pytest.fail)
    r.setup(foo_csv_output=None)
    r.on_completion({})

def test__requirements():
    parser = argparse.ArgumentParser()
    setup_args(parser, [CSVReporter(name='foo', row_fn=fn), CSVReporter(name='bar', row_fn=fn, option='out')])
    args = parser.parse_args([])
    assert args.foo_csv_output is None
    assert args.out is None
