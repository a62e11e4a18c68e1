"""
Driving the annotation service over HTTP
========================================

"""

import shutil
import tempfile
from pathlib import Path

from fastapi.testclient import TestClient

from tbkit.service import create_app

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"

# The service edits one document per session. Work on a scratch copy.
workdir = Path(tempfile.mkdtemp())
doc = workdir / "session.conllu"
shutil.copy(FIXTURES / "table5.conllu", doc)

app = create_app(doc)
with TestClient(app) as client:
    # Sentence payloads bundle tokens, live diagnostics and a ready-made
    # arc layout for rendering.
    payload = client.get("/sentence/0").json()
    print("forms:", [t["FORM"] for t in payload["tokens"]])
    print("diagnostics:", [d["code"] for d in payload["diagnostics"]])

    # Edits are staged in memory; the file on disk is untouched until an
    # explicit save.
    client.patch("/sentence/0/token/2", json={"field": "LEMMA", "value": "şapka"})
    print("dirty:", client.get("/document").json()["dirty"])

    # The split endpoint applies the -ki split to a single token.
    after = client.post("/sentence/0/split", json={"token": 1}).json()
    print("after split:", [t["FORM"] for t in after["tokens"]])

    # Closed-vocabulary completion: a unique prefix fills in directly.
    print(client.get("/vocab/DEPREL", params={"prefix": "dep:d"}).json())

    # Undo pops one change at a time, splits included.
    client.post("/undo")
    client.post("/save")
    print("saved:", doc.read_text(encoding="utf-8").splitlines()[0])

shutil.rmtree(workdir)
