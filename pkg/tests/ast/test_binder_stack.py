from avon.ast.binder_stack import binder_frame, binder_stack


def test_empty_stack():
    s = binder_stack()
    assert s.depth == 0
    assert not s.is_bound("x")


def test_bind_in_frame():
    s = binder_stack()
    with binder_frame(s):
        s.bind("x")
        assert s.is_bound("x")
        assert s.depth == 1
    assert not s.is_bound("x")
    assert s.depth == 0


def test_nested_frames():
    s = binder_stack()
    with binder_frame(s):
        s.bind("x")
        with binder_frame(s):
            s.bind("y")
            assert s.is_bound("x")
            assert s.is_bound("y")
            assert s.depth == 2
        assert not s.is_bound("y")
        assert s.is_bound("x")


def test_frame_popped_on_exception():
    s = binder_stack()
    try:
        with binder_frame(s):
            s.bind("x")
            raise ValueError("boom")
    except ValueError:
        pass
    assert s.depth == 0
    assert not s.is_bound("x")
