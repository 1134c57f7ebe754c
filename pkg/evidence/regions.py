import ast as _ast
import dataclasses as _dataclasses
import itertools as _itertools
import math as _math
import re as _re

from . import errors as _errors

_INF = _math.inf
_DECIMAL = _re.compile(r'(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?\Z')
# a predicate ending in one of these is cut off
_DANGLING = _re.compile(r'([<>=(,+-]|\b(and|or|not|abs))\Z')


@_dataclasses.dataclass(frozen=True)
class Interval:
    lower: float
    upper: float
    lower_closed: bool = True
    upper_closed: bool = True

    def __post_init__(self):
        object.__setattr__(self, 'lower', float(self.lower))
        object.__setattr__(self, 'upper', float(self.upper))
        # infinite endpoints never belong to the set
        if _math.isinf(self.lower):
            object.__setattr__(self, 'lower_closed', False)
        if _math.isinf(self.upper):
            object.__setattr__(self, 'upper_closed', False)
    @property
    def is_empty(self):
        if self.lower > self.upper:
            return True
        if self.lower == self.upper:
            return not (self.lower_closed and self.upper_closed)
        return False
    @property
    def is_point(self):
        return self.lower == self.upper and not self.is_empty
    def contains(self, x):
        if x < self.lower or x > self.upper:
            return False
        if x == self.lower and not self.lower_closed:
            return False
        if x == self.upper and not self.upper_closed:
            return False
        return True
    def intersect(self, other):
        if self.lower > other.lower:
            lower, lower_closed = self.lower, self.lower_closed
        elif self.lower < other.lower:
            lower, lower_closed = other.lower, other.lower_closed
        else:
            lower, lower_closed = self.lower, self.lower_closed and other.lower_closed
        if self.upper < other.upper:
            upper, upper_closed = self.upper, self.upper_closed
        elif self.upper > other.upper:
            upper, upper_closed = other.upper, other.upper_closed
        else:
            upper, upper_closed = self.upper, self.upper_closed and other.upper_closed
        return Interval(lower, upper, lower_closed, upper_closed)
    def closure(self):
        return Interval(self.lower, self.upper, True, True)
    def to_json(self):
        return {
            'lower': self.lower,
            'upper': self.upper,
            'lower_closed': self.lower_closed,
            'upper_closed': self.upper_closed,
        }
    @classmethod
    def from_json(cls, d):
        return cls(d['lower'], d['upper'], d['lower_closed'], d['upper_closed'])
    def __str__(self):
        return '{}{}, {}{}'.format(
            '[' if self.lower_closed else '(',
            _format_endpoint(self.lower),
            _format_endpoint(self.upper),
            ']' if self.upper_closed else ')')


def _format_endpoint(x):
    if _math.isinf(x):
        return '-inf' if x < 0 else 'inf'
    return repr(x)


REAL_LINE = Interval(-_INF, _INF, False, False)


@_dataclasses.dataclass(frozen=True)
class ScalarRegion:
    # sorted, pairwise disjoint, non-empty
    intervals: tuple = ()

    @classmethod
    def of(cls, intervals):
        pieces = sorted(
            (i for i in intervals if not i.is_empty),
            key=lambda i: (i.lower, not i.lower_closed))
        merged = []
        for piece in pieces:
            if merged and _touches(merged[-1], piece):
                last = merged[-1]
                if piece.upper > last.upper:
                    upper, upper_closed = piece.upper, piece.upper_closed
                elif piece.upper < last.upper:
                    upper, upper_closed = last.upper, last.upper_closed
                else:
                    upper, upper_closed = last.upper, last.upper_closed or piece.upper_closed
                merged[-1] = Interval(last.lower, upper, last.lower_closed, upper_closed)
            else:
                merged.append(piece)
        return cls(tuple(merged))
    @property
    def is_empty(self):
        return not self.intervals
    def contains(self, x):
        return any(i.contains(x) for i in self.intervals)
    def complement(self, within=REAL_LINE):
        gaps = []
        lower, lower_closed = within.lower, within.lower_closed
        for i in self.intervals:
            gaps.append(Interval(lower, i.lower, lower_closed, not i.lower_closed))
            lower, lower_closed = i.upper, not i.upper_closed
        gaps.append(Interval(lower, within.upper, lower_closed, within.upper_closed))
        return ScalarRegion.of(g.intersect(within) for g in gaps)
    def intersect(self, interval):
        return ScalarRegion.of(i.intersect(interval) for i in self.intervals)
    def shift(self, offset):
        return ScalarRegion.of(
            Interval(i.lower + offset, i.upper + offset, i.lower_closed, i.upper_closed)
            for i in self.intervals)
    def __str__(self):
        if not self.intervals:
            return '{}'
        return ' u '.join(str(i) for i in self.intervals)


def _touches(a, b):
    # a sorted before b
    if b.lower < a.upper:
        return True
    if b.lower == a.upper:
        return a.upper_closed or b.lower_closed
    return False


@_dataclasses.dataclass(frozen=True)
class Parameter:
    name: str
    lower: float = -_INF
    upper: float = _INF
    lower_closed: bool = True
    upper_closed: bool = True

    @property
    def bounds(self):
        return Interval(self.lower, self.upper, self.lower_closed, self.upper_closed)


@_dataclasses.dataclass(frozen=True)
class ParameterSpace:
    params: tuple

    def __post_init__(self):
        params = tuple(self.params)
        object.__setattr__(self, 'params', params)
        names = [p.name for p in params]
        if not params:
            raise _errors.UsageError('a parameter space needs at least one parameter')
        if len(set(names)) != len(names):
            raise _errors.UsageError('duplicate parameter names: {}'.format(names))
        for p in params:
            if not p.lower < p.upper:
                raise _errors.UsageError(
                    'parameter {} needs lower < upper, got {} and {}'.format(p.name, p.lower, p.upper))
    @classmethod
    def of(cls, *params):
        return cls(tuple(params))
    @property
    def names(self):
        return tuple(p.name for p in self.params)
    @property
    def dim(self):
        return len(self.params)
    def __getitem__(self, name):
        for p in self.params:
            if p.name == name:
                return p
        raise _errors.UnknownParameterError(name, self.names)
    def index(self, name):
        return self.names.index(self[name].name)
    def as_point(self, p):
        if isinstance(p, dict):
            missing = [n for n in self.names if n not in p]
            if missing:
                raise _errors.UsageError('point is missing {}'.format(missing))
            return tuple(float(p[n]) for n in self.names)
        p = tuple(float(v) for v in (p if hasattr(p, '__len__') else (p,)))
        if len(p) != self.dim:
            raise _errors.UsageError(
                'point has {} coordinates, space has {}'.format(len(p), self.dim))
        return p
    def to_json(self):
        return [dict(name=p.name, **p.bounds.to_json()) for p in self.params]
    @classmethod
    def from_json(cls, items):
        return cls(tuple(
            Parameter(d['name'], d['lower'], d['upper'], d['lower_closed'], d['upper_closed'])
            for d in items))


@_dataclasses.dataclass(frozen=True)
class Box:
    constraints: tuple = ()

    @classmethod
    def of(cls, mapping):
        return cls(tuple(sorted(mapping.items())))
    def get(self, name, default=None):
        return dict(self.constraints).get(name, default)
    @property
    def names(self):
        return tuple(n for n, _ in self.constraints)
    @property
    def is_empty(self):
        return any(i.is_empty for _, i in self.constraints)
    def bounds(self, space):
        own = dict(self.constraints)
        return [own.get(p.name, p.bounds).intersect(p.bounds) for p in space.params]


@_dataclasses.dataclass(frozen=True)
class Region:
    space: ParameterSpace
    boxes: tuple

    @classmethod
    def full(cls, space):
        return cls(space, (Box(),))
    @classmethod
    def empty(cls, space):
        return cls(space, ())
    @classmethod
    def from_scalar(cls, space, name, scalar):
        space[name]  # unknown names raise here
        return cls.of(space, (Box.of({name: i}) for i in scalar.intervals))
    @classmethod
    def of(cls, space, boxes):
        return cls(space, _normalize(space, boxes))
    @property
    def is_empty(self):
        return not self.boxes
    @property
    def is_full(self):
        return self.boxes == (Box(),)
    def contains(self, p):
        p = self.space.as_point(p)
        for box in self.boxes:
            if all(b.contains(x) for b, x in zip(box.bounds(self.space), p)):
                return True
        return False
    def intersect(self, other):
        _check_same_space(self, other)
        boxes = []
        for a, b in _itertools.product(self.boxes, other.boxes):
            merged = dict(a.constraints)
            for name, interval in b.constraints:
                merged[name] = merged[name].intersect(interval) if name in merged else interval
            boxes.append(Box.of(merged))
        return Region.of(self.space, boxes)
    def union(self, other):
        _check_same_space(self, other)
        return Region.of(self.space, self.boxes + other.boxes)
    def complement(self):
        result = Region.full(self.space)
        for box in self.boxes:
            pieces = []
            for name, interval in box.constraints:
                outside = ScalarRegion.of((interval,)).complement(self.space[name].bounds)
                pieces.extend(Box.of({name: i}) for i in outside.intervals)
            result = result.intersect(Region.of(self.space, pieces))
        return result
    def closure(self):
        boxes = []
        for box in self.boxes:
            boxes.append(Box.of({
                name: interval.closure()
                for name, interval in box.constraints}))
        return Region.of(self.space, boxes)
    def closed_boxes(self):
        return [
            [(b.lower, b.upper) for b in box.bounds(self.space)]
            for box in self.closure().boxes]
    def scalar(self, name):
        bounds = self.space[name].bounds
        pieces = []
        for box in self.boxes:
            other = [n for n in box.names if n != name]
            if other:
                raise _errors.RegionError(
                    'region also constrains {}, not a region on {} alone'.format(other, name))
            pieces.append(box.get(name, bounds))
        return ScalarRegion.of(pieces)
    def to_json(self):
        return {
            'parameters': self.space.to_json(),
            'boxes': [
                {name: interval.to_json() for name, interval in box.constraints}
                for box in self.boxes],
        }
    @classmethod
    def from_json(cls, d):
        space = ParameterSpace.from_json(d['parameters'])
        return cls.of(space, (
            Box.of({name: Interval.from_json(i) for name, i in box.items()})
            for box in d['boxes']))
    def __str__(self):
        if self.is_empty:
            return '{}'
        parts = []
        for box in self.boxes:
            if not box.constraints:
                parts.append(' x '.join(str(p.bounds) for p in self.space.params))
            else:
                parts.append(' x '.join('{} in {}'.format(n, i) for n, i in box.constraints))
        return ' u '.join(parts)


def _check_same_space(a, b):
    if a.space != b.space:
        raise _errors.RegionError('regions live in different parameter spaces')


def _normalize(space, boxes):
    clipped = []
    for box in boxes:
        constraints = {}
        for name, interval in box.constraints:
            bounds = space[name].bounds
            interval = interval.intersect(bounds)
            if interval != bounds:
                constraints[name] = interval
        box = Box.of(constraints)
        if box.is_empty:
            continue
        if not box.constraints:
            return (Box(),)
        clipped.append(box)
    single = {}
    rest = []
    for box in clipped:
        if len(box.constraints) == 1:
            single.setdefault(box.names[0], []).append(box.constraints[0][1])
        elif box not in rest:
            rest.append(box)
    merged = []
    for name, intervals in single.items():
        scalar = ScalarRegion.of(intervals)
        if scalar.intervals == (space[name].bounds,):
            return (Box(),)
        merged.extend(Box.of({name: i}) for i in scalar.intervals)
    return tuple(sorted(merged + rest, key=_box_key))


def _box_key(box):
    return tuple(
        (name, i.lower, not i.lower_closed, i.upper, i.upper_closed)
        for name, i in box.constraints)


def closure(r):
    return r.closure()


def contains(r, p):
    return r.contains(p)


def complement(r):
    if r.is_empty:
        raise _errors.EmptyRegionError('cannot complement an empty region')
    c = r.complement()
    if c.is_empty:
        raise _errors.EmptyRegionError('complement of {} is empty'.format(r))
    return c


_COMPARISONS = {
    _ast.Lt: '<',
    _ast.LtE: '<=',
    _ast.Gt: '>',
    _ast.GtE: '>=',
    _ast.Eq: '==',
}
_FLIPPED = {'<': '>', '<=': '>=', '>': '<', '>=': '<=', '==': '=='}


def _halfline(op, c):
    if op == '<':
        return ScalarRegion.of((Interval(-_INF, c, False, False),))
    if op == '<=':
        return ScalarRegion.of((Interval(-_INF, c, False, True),))
    if op == '>':
        return ScalarRegion.of((Interval(c, _INF, False, False),))
    if op == '>=':
        return ScalarRegion.of((Interval(c, _INF, True, False),))
    return ScalarRegion.of((Interval(c, c),))


def _abs_region(op, center, radius):
    if op == '==':
        if radius < 0:
            return ScalarRegion()
        return ScalarRegion.of((
            Interval(center - radius, center - radius),
            Interval(center + radius, center + radius)))
    lo, hi = center - radius, center + radius
    if op == '<':
        return ScalarRegion.of((Interval(lo, hi, False, False),))
    if op == '<=':
        return ScalarRegion.of((Interval(lo, hi, True, True),))
    closed = op == '>='
    return ScalarRegion.of((
        Interval(-_INF, lo, False, closed),
        Interval(hi, _INF, closed, False)))


class _Translator:
    def __init__(self, text, space, offset):
        self.text = text
        self.source = text[offset:]
        self.space = space
        self.offset = offset
    def fail(self, node, message):
        raise _errors.RegionSyntaxError(
            message, self.text, getattr(node, 'col_offset', 0) + 1 + self.offset)
    def region(self, node):
        if isinstance(node, _ast.BoolOp):
            parts = [self.region(v) for v in node.values]
            result = parts[0]
            for part in parts[1:]:
                if isinstance(node.op, _ast.And):
                    result = result.intersect(part)
                else:
                    result = result.union(part)
            return result
        if isinstance(node, _ast.UnaryOp) and isinstance(node.op, _ast.Not):
            return self.region(node.operand).complement()
        if isinstance(node, _ast.Compare):
            terms = [node.left] + list(node.comparators)
            result = Region.full(self.space)
            for left, op, right in zip(terms, node.ops, terms[1:]):
                result = result.intersect(self.comparison(node, left, op, right))
            return result
        self.fail(node, 'expected a comparison, "and", "or" or "not(...)"')
    def comparison(self, node, left, op, right):
        if type(op) not in _COMPARISONS:
            self.fail(node, 'unsupported comparison operator')
        op = _COMPARISONS[type(op)]
        if self.is_constant(left) and not self.is_constant(right):
            left, right, op = right, left, _FLIPPED[op]
        c = self.constant(right)
        if isinstance(left, _ast.Name):
            return Region.from_scalar(self.space, self.name(left), _halfline(op, c))
        if isinstance(left, _ast.Call):
            name, center = self.abs_argument(left)
            return Region.from_scalar(self.space, name, _abs_region(op, center, c))
        self.fail(left, 'expected a parameter name or abs(name - constant)')
    def abs_argument(self, call):
        if not (isinstance(call.func, _ast.Name) and call.func.id == 'abs'
                and len(call.args) == 1 and not call.keywords):
            self.fail(call, 'only abs(...) may be called')
        arg = call.args[0]
        if isinstance(arg, _ast.Name):
            return self.name(arg), 0.0
        if isinstance(arg, _ast.BinOp) and isinstance(arg.op, (_ast.Sub, _ast.Add)):
            if isinstance(arg.left, _ast.Name):
                c = self.constant(arg.right)
                return self.name(arg.left), c if isinstance(arg.op, _ast.Sub) else -c
            if isinstance(arg.right, _ast.Name):
                c = self.constant(arg.left)
                return self.name(arg.right), c if isinstance(arg.op, _ast.Sub) else -c
        self.fail(arg, 'expected abs(name - constant)')
    def name(self, node):
        if node.id not in self.space.names:
            raise _errors.UnknownParameterError(node.id, self.space.names)
        return node.id
    def is_constant(self, node):
        if isinstance(node, _ast.UnaryOp) and isinstance(node.op, (_ast.USub, _ast.UAdd)):
            node = node.operand
        return isinstance(node, _ast.Constant)
    def constant(self, node):
        sign = 1.0
        if isinstance(node, _ast.UnaryOp) and isinstance(node.op, (_ast.USub, _ast.UAdd)):
            sign = -1.0 if isinstance(node.op, _ast.USub) else 1.0
            node = node.operand
        if (isinstance(node, _ast.Constant) and not isinstance(node.value, bool)
                and isinstance(node.value, (int, float))
                and _DECIMAL.match(_ast.get_source_segment(self.source, node) or '')):
            return sign * float(node.value)
        self.fail(node, 'expected a decimal constant')


def parse_region(text, space):
    stripped = text.lstrip()
    offset = len(text) - len(stripped)
    source = stripped.rstrip()
    try:
        tree = _ast.parse(source, mode='eval')
    except SyntaxError as e:
        column = e.offset or 1
        if _DANGLING.search(source) or e.lineno != 1 or not 1 <= column <= len(source):
            # report the end of a cut-off predicate, not its first column
            column = len(source) + 1
        raise _errors.RegionSyntaxError(e.msg, text, column + offset)
    region = _Translator(text, space, offset).region(tree.body)
    if region.is_empty:
        raise _errors.EmptyRegionError('predicate {!r} describes an empty region'.format(text))
    return region
