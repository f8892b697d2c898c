import { DEFAULT_BASE, fetchContexts, fetchDocument, fetchDocuments } from "./api.js";
import { countDecorated } from "./markup.js";
import { traverse } from "./nav.js";
import { formatState, parseState, selectDocument, toggleContext, type ViewState } from "./state.js";

const base = new URLSearchParams(location.search).get("api") ?? DEFAULT_BASE;

const docList = document.getElementById("documents") as HTMLUListElement;
const ctxList = document.getElementById("contexts") as HTMLUListElement;
const pane = document.getElementById("pane") as HTMLElement;
const status = document.getElementById("status") as HTMLElement;

let state: ViewState = parseState(location.search);
let fetchSeq = 0;

function apply(next: ViewState): void {
    state = next;
    const api = base === DEFAULT_BASE ? "" : `&api=${encodeURIComponent(base)}`;
    history.pushState(null, "", (formatState(state) || "?") + api);
    refresh();
}

async function refresh(): Promise<void> {
    markActive();
    if (state.doc === null) {
        pane.innerHTML = "<p class='hint'>Pick a document.</p>";
        status.textContent = "";
        return;
    }
    const seq = ++fetchSeq;
    try {
        const body = await fetchDocument(base, state.doc, state.contexts);
        if (seq !== fetchSeq) return; // a newer fetch already landed
        renderBody(body);
        status.textContent = `${state.doc} - ${countDecorated(body)} link(s)`;
    } catch (err) {
        if (seq !== fetchSeq) return;
        pane.innerHTML = "";
        pane.append(Object.assign(document.createElement("pre"), {
            className: "error", textContent: String(err),
        }));
        status.textContent = "";
    }
}

function renderBody(body: string): void {
    const parsed = new DOMParser().parseFromString(body, "application/xhtml+xml");
    pane.innerHTML = "";
    pane.append(document.importNode(parsed.documentElement, true));
    for (const anchor of pane.querySelectorAll<HTMLElement>("a[data-link]")) {
        const arcrole = anchor.getAttribute("data-arcrole") ?? "";
        const title = anchor.getAttribute("title");
        anchor.setAttribute("title", title ? `${title} (${arcrole})` : arcrole);
    }
}

function markActive(): void {
    for (const input of ctxList.querySelectorAll<HTMLInputElement>("input")) {
        input.checked = state.contexts.includes(input.value);
    }
    for (const item of docList.querySelectorAll("a")) {
        item.classList.toggle("active", item.dataset.path === state.doc);
    }
}

pane.addEventListener("click", (event) => {
    const anchor = (event.target as Element).closest("a[data-link]");
    if (!(anchor instanceof Element)) return;
    const next = traverse(state, anchor.getAttribute("href") ?? "");
    if (next === null) return; // absolute target: let the browser have it
    event.preventDefault();
    apply(next);
});

window.addEventListener("popstate", () => {
    state = parseState(location.search);
    refresh();
});

async function boot(): Promise<void> {
    const [documents, contexts] = await Promise.all([
        fetchDocuments(base), fetchContexts(base),
    ]);

    docList.innerHTML = "";
    for (const path of documents) {
        const link = Object.assign(document.createElement("a"), {
            href: "#", textContent: path,
        });
        link.dataset.path = path;
        link.addEventListener("click", (event) => {
            event.preventDefault();
            apply(selectDocument(state, path));
        });
        const item = document.createElement("li");
        item.append(link);
        docList.append(item);
    }

    ctxList.innerHTML = "";
    for (const ctx of contexts) {
        const box = Object.assign(document.createElement("input"), {
            type: "checkbox", value: ctx.path,
        });
        box.addEventListener("change", () => apply(toggleContext(state, ctx.path)));
        const label = document.createElement("label");
        label.append(box, ` ${ctx.title}`);
        label.title = `${ctx.description ?? ""} (${ctx.creator})`;
        const item = document.createElement("li");
        item.append(label);
        ctxList.append(item);
    }

    refresh();
}

boot().catch((err) => {
    status.textContent = `cannot reach ${base}: ${err}`;
});
