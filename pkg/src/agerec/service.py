"""HTTP service for live per-sentence age-range recommendation.

Endpoints:
  POST /recommend  {"text": ...} ->
      {"sentences": [{"text", "lo", "hi", "mu"}, ...],
       "text_level": {"lo", "hi", "mu"}, "model_id": ...}
  GET  /health     -> {"status": "ok", "model_id": ...}
  GET  /registry   -> {"features": [{"index", "name", "category"}, ...]}

The loaded model and resources are immutable; no request mutates server
state. Numeric fields are rounded to 3 decimals on the wire. Bodies above
the configured limit (default 64 KiB) are rejected.
"""

from __future__ import annotations

import json

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from .features import REGISTRY, ResourceBundle
from .models import ModelArtifact, aggregate_mean, predict
from .pipeline import sentence_features, split_text

DEFAULT_MAX_BODY = 64 * 1024


def _round(x: float) -> float:
    return round(float(x), 3)


def create_app(artifact: ModelArtifact, resources: ResourceBundle,
               model_id: str = "default",
               max_body_bytes: int = DEFAULT_MAX_BODY) -> FastAPI:
    app = FastAPI(title="age-range recommendation service")

    @app.get("/health")
    def health():
        return {"status": "ok", "model_id": model_id}

    @app.get("/registry")
    def registry():
        return {"features": [
            {"index": i, "name": name, "category": category}
            for i, (name, category) in enumerate(REGISTRY.entries)
        ]}

    @app.post("/recommend")
    async def recommend(request: Request):
        body = await request.body()
        if len(body) > max_body_bytes:
            return JSONResponse(
                status_code=413,
                content={"error": f"body exceeds {max_body_bytes} bytes"})
        try:
            payload = json.loads(body)
        except json.JSONDecodeError as exc:
            return JSONResponse(status_code=400,
                                content={"error": f"invalid JSON: {exc}"})
        if not isinstance(payload, dict) or "text" not in payload:
            return JSONResponse(
                status_code=400,
                content={"error": "expected a JSON object with a 'text' field"})
        text = payload["text"]
        if not isinstance(text, str) or not text.strip():
            return JSONResponse(status_code=400,
                                content={"error": "'text' must be a non-empty string"})
        sentences = split_text(text)
        if not sentences:
            return JSONResponse(status_code=400,
                                content={"error": "no sentences found in 'text'"})
        preds = []
        for sent in sentences:
            vec = sentence_features(sent, resources)
            preds.append(predict(artifact, vec.values[None, :])[0])
        text_level = aggregate_mean(preds)
        return {
            "sentences": [
                {"text": s, "lo": _round(p.lo), "hi": _round(p.hi),
                 "mu": _round(p.mu)}
                for s, p in zip(sentences, preds)
            ],
            "text_level": {"lo": _round(text_level.lo),
                           "hi": _round(text_level.hi),
                           "mu": _round(text_level.mu)},
            "model_id": model_id,
        }

    return app
