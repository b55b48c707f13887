import asyncio
import json

from fastmcp import Client

from swtorsion.server import mcp


def _call(name: str, arguments: dict) -> dict:
    async def run():
        async with Client(mcp) as client:
            result = await client.call_tool(name, arguments)
            return json.loads(result.content[0].text)

    return asyncio.run(run())


def test_tools_are_registered():
    async def run():
        async with Client(mcp) as client:
            return {tool.name for tool in await client.list_tools()}

    assert asyncio.run(run()) == {"report", "twists", "alexander", "fox"}


def test_report_tool():
    payload = _call("report", {"genus": 2})
    assert payload["sw_x"]["text"] == "s^-2 - 3 + s^2"
    assert payload["kodaira"] == "1"


def test_report_tool_returns_errors_as_payload():
    assert "error" in _call("report", {"genus": 0})
    assert "error" in _call("twists", {"word": "Tz1", "genus": 2})


def test_alexander_tool(data_dir):
    payload = _call("alexander", {"text": (data_dir / "trefoil.txt").read_text()})
    assert payload["h1"] == "Z"
    assert payload["alexander"]["text"] == "1 - t + t^2"
    assert payload["symmetrized"]["text"] == "t^-1 - 1 + t"


def test_fox_tool():
    payload = _call("fox", {"word": "a b a^-1 b^-1", "generator": "b"})
    assert payload["derivative"] == "a - a b a^-1 b^-1"
    assert payload["abelianized"]["text"] == "-1 + a"
