"""Hypothesis strategies shared by the test modules."""

from hypothesis import strategies as st

bits = st.text(alphabet="01", max_size=8)
short_bits = st.text(alphabet="01", max_size=4)


@st.composite
def toy_tables(draw, max_entries=64, max_prog_len=6, max_out_len=4):
    progs = draw(st.sets(st.text(alphabet="01", max_size=max_prog_len), max_size=max_entries))
    return {p: draw(st.text(alphabet="01", max_size=max_out_len)) for p in sorted(progs)}
