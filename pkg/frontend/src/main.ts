/** DOM wiring for the author panel. All logic lives in state.ts and
 * render.ts; this file only moves data between them and the page. */

import { ApiClient } from "./api.js";
import { buildView } from "./render.js";
import { PanelController } from "./state.js";

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el as T;
}

export function mount(baseUrl = ""): PanelController {
  const editor = byId<HTMLTextAreaElement>("editor");
  const target = byId<HTMLInputElement>("target-age");
  const sentenceList = byId<HTMLDivElement>("sentences");
  const gauge = byId<HTMLDivElement>("gauge");
  const banner = byId<HTMLDivElement>("banner");
  const controller = new PanelController(new ApiClient(baseUrl));

  controller.subscribe((state) => {
    banner.hidden = state.status !== "error";
    banner.textContent = state.errorMessage ?? "";

    const view = buildView(state.lastResponse, state.targetAge);
    if (view.empty) {
      sentenceList.textContent = "Start writing to see age recommendations.";
      gauge.textContent = "";
      return;
    }
    sentenceList.replaceChildren(
      ...view.sentences.map((s) => {
        const row = document.createElement("div");
        row.className = s.flagged ? "sentence flagged" : "sentence";
        row.style.borderLeftColor = s.color;
        row.textContent = `${s.text}  [${s.lo}–${s.hi}]`;
        row.title = s.flagged
          ? `Target ${state.targetAge} is outside ${s.lo}–${s.hi}`
          : `Mean recommended age ${s.mu}`;
        return row;
      }),
    );
    const g = view.gauge!;
    gauge.textContent =
      `Whole text: ${g.lo}–${g.hi} (mean ${g.mu}) — target ${g.targetAge} ` +
      (g.targetInside ? "fits" : "does not fit");
  });

  editor.addEventListener("input", () => controller.onEdit(editor.value));
  target.addEventListener("input", () =>
    controller.setTargetAge(Number(target.value)),
  );
  return controller;
}

if (typeof document !== "undefined" && document.getElementById("editor")) {
  mount();
}
