from typing import List, Set


class binder_stack:
    """
    Tracks which variable names are bound by the set-builders enclosing the
    node currently being visited. Each set-builder opens a frame; its binder
    names are added one at a time so that the domain of the i-th binder only
    sees the binders before it.
    """

    def __init__(self):
        self._frames: List[Set[str]] = [set()]

    def push_frame(self):
        "Open a frame for a new set-builder"
        self._frames.append(set())

    def pop_frame(self):
        "Drop the innermost frame and every name bound in it"
        del self._frames[-1]

    def bind(self, name: str):
        "Bind `name` in the innermost frame"
        self._frames[-1].add(name)

    def is_bound(self, name: str) -> bool:
        return any(name in f for f in self._frames)

    @property
    def depth(self) -> int:
        "Number of set-builders currently open"
        return len(self._frames) - 1


class binder_frame:
    """
    Resource management class that opens a frame on a `binder_stack`
    and closes it on the way out.
    """

    def __init__(self, stack: binder_stack):
        self._stack = stack

    def __enter__(self):
        self._stack.push_frame()
        return self._stack

    def __exit__(self, type, value, traceback):
        self._stack.pop_frame()
        return None
