from tpsbench.app.domain.dsl.parser import parse, parse_document, parse_element
from tpsbench.app.domain.dsl.render import render, render_element

__all__ = ["parse", "parse_document", "parse_element", "render", "render_element"]
