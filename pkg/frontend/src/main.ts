import { ApiClient, ApiError, type SuggestionPayload } from "./api.js";
import { attachEditor } from "./editor.js";
import { attachHoverHandlers, buildLinkIndex } from "./hover.js";
import { renderErrorBanner, renderPagePair } from "./render.js";
import { runSaveFlow } from "./saveflow.js";
import { renderSuggestions, showToast } from "./sidebar.js";
import { initialState, type ViewState } from "./state.js";

// Session bootstrap. The server address, auth token, project, and role
// come from query parameters so the static page needs no build-time
// configuration: ?base=http://127.0.0.1:8000&token=corrector-token&project=demo&role=Corrector
function param(name: string, fallback: string): string {
  return new URLSearchParams(window.location.search).get(name) ?? fallback;
}

async function loadPage(
  api: ApiClient,
  state: ViewState,
  notice?: string,
): Promise<void> {
  const root = document.getElementById("page-root")!;
  const sidebar = document.getElementById("sidebar")!;
  try {
    const page = await api.getPage(state.projectId, state.currentPage);
    state.version = page.version;
    renderPagePair(root, page, {
      renderUrl: page.source_render
        ? api.renderUrl(state.projectId, state.currentPage)
        : null,
    });
    const index = buildLinkIndex(page);
    attachHoverHandlers(root, index);
    document.getElementById("page-label")!.textContent =
      `Page ${page.index} · ${page.status}`;
    if (notice) showToast(document.body, notice);

    const fetched = await api.getSuggestions(state.projectId, state.currentPage);
    renderSuggestions(sidebar, fetched.suggestions, {
      onApply: async (suggestion: SuggestionPayload) => {
        try {
          const result = await api.applySuggestion(
            state.projectId,
            suggestion,
            state.version,
          );
          state.version = result.version;
          await loadPage(api, state);
          return "applied";
        } catch (err) {
          if (err instanceof ApiError && err.status === 409) {
            showToast(document.body, "Suggestion went stale; list refreshed.");
            await loadPage(api, state);
            return "stale";
          }
          throw err;
        }
      },
    });
    void api.postEvent(state.projectId, "PageOpened", state.currentPage);
  } catch (err) {
    renderErrorBanner(root, err instanceof Error ? err.message : String(err));
  }
}

function wireChrome(api: ApiClient, state: ViewState): void {
  document.getElementById("save-btn")!.addEventListener("click", () => {
    void runSaveFlow(api, state, document.body, {
      reloadPage: (notice) => loadPage(api, state, notice),
      onApplied: (count) =>
        showToast(document.body, `${count} replacements applied`),
    });
  });

  document.getElementById("status-btn")!.addEventListener("click", () => {
    api
      .postStatus(state.projectId, state.currentPage)
      .then((result) => {
        state.version = result.version;
        return loadPage(api, state, `Page is now ${result.status}`);
      })
      .catch((err: unknown) => {
        if (err instanceof ApiError && err.status === 403) {
          showToast(document.body, `Not allowed for role ${state.role}`);
        }
      });
  });

  const slp1Toggle = document.getElementById("slp1-toggle") as HTMLInputElement;
  slp1Toggle.addEventListener("change", () => {
    state.slp1Mode = slp1Toggle.checked;
  });

  document.getElementById("prev-page")!.addEventListener("click", () => {
    if (state.currentPage > 1) {
      state.currentPage -= 1;
      void loadPage(api, state);
    }
  });
  document.getElementById("next-page")!.addEventListener("click", () => {
    state.currentPage += 1;
    void loadPage(api, state);
  });

  for (const format of ["PlainText", "HTML", "LaTeX"] as const) {
    const link = document.getElementById(`export-${format.toLowerCase()}`);
    link?.setAttribute("href", api.exportUrl(state.projectId, format));
  }
}

export function bootstrap(): void {
  const base = param("base", "http://127.0.0.1:8000");
  const token = param("token", "corrector-token");
  const project = param("project", "");
  const role = param("role", "Corrector");
  if (!project) {
    renderErrorBanner(
      document.getElementById("page-root")!,
      "Missing ?project= query parameter.",
    );
    return;
  }
  const api = new ApiClient(base, token);
  const state = initialState(project, role);
  attachEditor(document.getElementById("page-root")!, state);
  wireChrome(api, state);
  void api.postEvent(project, "SessionStarted");
  void loadPage(api, state);
}

if (typeof document !== "undefined" && document.getElementById("page-root")) {
  bootstrap();
}
