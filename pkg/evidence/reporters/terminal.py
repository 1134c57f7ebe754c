import blessings as _blessings
import pystache as _pystache

import evidence as _evidence

from .json import round_significant

TEMPLATE = """\
{{{command}}}
{{#rows}}
  {{{key}}}: {{{value}}}
{{/rows}}
"""


def _rows(data, prefix=''):
    for key, value in data.items():
        key = prefix + str(key)
        if isinstance(value, dict):
            yield from _rows(value, key + '.')
        elif isinstance(value, list) and len(value) > 8:
            yield {'key': key, 'value': '[{} values]'.format(len(value))}
        else:
            yield {'key': key, 'value': value}


class TerminalReporter(_evidence.Reporter):
    """Human-readable summary; strength labels are printed as descriptive only."""

    def __init__(self, output, template=TEMPLATE):
        self.output = output
        self.terminal = _blessings.Terminal(stream=output)
        self.template = _pystache.parse(template)
    def on_part_completion(self, name, data):
        t = self.terminal
        self.output.write(t.italic('[{}] '.format(name)))
        self.output.write(', '.join('{}={}'.format(k, v) for k, v in round_significant(data).items()))
        self.output.write('\n')
    def on_completion(self, data):
        t = self.terminal
        data = round_significant(data)
        manifest = data.pop('manifest', {})
        label = _find(data, 'strength_label')
        self.output.write(_pystache.render(self.template, {
            'command': t.underline(manifest.get('command', 'evidence')),
            'rows': list(_rows(data)),
        }))
        if label is not None:
            colour = t.green if label.startswith('strong') else t.yellow if label.startswith('fairly') else str
            self.output.write(colour('evidence: {} [descriptive label]'.format(label)) + '\n')


def _find(data, key):
    if isinstance(data, dict):
        if key in data:
            return data[key]
        for value in data.values():
            found = _find(value, key)
            if found is not None:
                return found
    return None
