import argparse as _argparse
import csv as _csv
import inspect as _inspect
import sys as _sys

import evidence as _evidence


def _cell(v):
    if isinstance(v, float):
        return '{:.12g}'.format(v)
    return v


class CSVReporter(_evidence.Reporter):
    """Writes ``row_fn(data)`` under ``headings`` to the file given by its option.

    The option defaults to ``--<name>-csv-output``; when it is not given on
    the command line nothing is written.
    """
    def __init__(self, name, row_fn, headings=None, option=None, **kwargs):
        self.name = name
        self.option = option or name+'-csv-output'
        self.requirements = {
            self.option: {
                'type': _argparse.FileType('w'),
                'default': None,
                'help': 'write {} rows as CSV to this file'.format(name),
            },
        }
        self.headings = headings
        self.row_fn = row_fn
        self.writer_kwargs = kwargs
        self.file = None
    def setup(self, **kwargs):
        self.file = kwargs.get(self.option.replace('-', '_'))
        if self.file is None:
            return
        self.writer = _csv.writer(self.file, **self.writer_kwargs)
        if self.headings is not None:
            self.writer.writerow(self.headings)
    def on_completion(self, data):
        if self.file is None:
            return
        rows = self.row_fn(data)
        if rows is not None:
            if _inspect.isgenerator(rows) or isinstance(rows, list):
                for r in rows:
                    self.writer.writerow([_cell(v) for v in r])
            else:
                self.writer.writerow([_cell(v) for v in rows])
        if self.file is not _sys.stdout:
            self.file.close()
