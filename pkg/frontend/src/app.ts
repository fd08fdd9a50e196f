import { ApiClient } from "./api.js";
import { pageMarkup } from "./render.js";
import {
  commitSelection,
  fromResponse,
  toggleSelection,
  undoMove,
  type ViewState,
} from "./state.js";

// Browser wiring: one session, one in-flight mutation at a time, every
// rendered state a verbatim server response.

export async function bootstrap(container: HTMLElement, baseUrl: string, k: number): Promise<void> {
  const api = new ApiClient(baseUrl);
  let view: ViewState;
  try {
    view = fromResponse(await api.createSession(k));
  } catch (err) {
    container.innerHTML = `<div class="banner error">cannot reach ${baseUrl}: ${String(err)}</div>`;
    return;
  }
  let busy = false;

  const render = () => {
    container.innerHTML = pageMarkup(view);
  };

  const mutate = async (transition: (v: ViewState) => Promise<ViewState>) => {
    if (busy) return;
    busy = true;
    try {
      view = await transition(view);
    } finally {
      busy = false;
    }
    render();
  };

  container.addEventListener("click", (event) => {
    const target = event.target as Element | null;
    if (!target) return;
    const glyph = target.closest("g.glyph");
    if (glyph instanceof SVGElement && glyph.dataset.id) {
      // inert glyphs are filtered inside toggleSelection: no request, no change
      view = toggleSelection(view, glyph.dataset.id);
      render();
      return;
    }
    const button = target.closest("button[data-action]");
    if (button instanceof HTMLButtonElement && !button.disabled) {
      if (button.dataset.action === "undo") void mutate((v) => undoMove(v, api));
      if (button.dataset.action === "commit") void mutate((v) => commitSelection(v, api));
    }
  });

  render();
}

function autostart(): void {
  if (typeof document === "undefined") return;
  const container = document.getElementById("app");
  if (!container) return;
  const params = new URLSearchParams(window.location.search);
  const baseUrl = params.get("api") ?? "http://127.0.0.1:8080";
  const k = Number(params.get("k") ?? "2");
  void bootstrap(container, baseUrl, Number.isFinite(k) && k >= 1 ? k : 2);
}

autostart();
