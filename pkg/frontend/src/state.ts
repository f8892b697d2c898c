// The whole view lives in the URL query string so any view is shareable:
// ?doc=<logical path>&ctx=<context path>&ctx=...

export interface ViewState {
    doc: string | null;
    contexts: string[];
}

export function parseState(search: string): ViewState {
    const query = new URLSearchParams(search);
    return { doc: query.get("doc"), contexts: query.getAll("ctx") };
}

export function formatState(state: ViewState): string {
    const query = new URLSearchParams();
    if (state.doc !== null) query.set("doc", state.doc);
    for (const ctx of state.contexts) query.append("ctx", ctx);
    const encoded = query.toString();
    return encoded ? `?${encoded}` : "";
}

/** Activation order is preserved: earlier contexts win title conflicts. */
export function toggleContext(state: ViewState, ctx: string): ViewState {
    const contexts = state.contexts.includes(ctx)
        ? state.contexts.filter((c) => c !== ctx)
        : [...state.contexts, ctx];
    return { ...state, contexts };
}

export function selectDocument(state: ViewState, doc: string): ViewState {
    return { ...state, doc };
}
