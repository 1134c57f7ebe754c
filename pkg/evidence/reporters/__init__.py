from .csv import CSVReporter
from .json import JSONReporter, round_significant
from .terminal import TerminalReporter


def build_reporters(format, output):
    if format == 'text':
        return [TerminalReporter(output)]
    return [JSONReporter(output)]
