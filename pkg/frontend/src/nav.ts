import { type ViewState } from "./state.js";

export interface Target {
    path: string;
    fragment: string;
}

const ABSOLUTE = /^[a-z][a-z0-9+.-]*:/i;

/**
 * Turn a decorated anchor's href into the logical path of the document it
 * targets, resolved against the document being viewed. Absolute IRIs are
 * not ours to handle; escaping above the store root is refused.
 */
export function resolveHref(current: string, href: string): Target | null {
    if (ABSOLUTE.test(href)) return null;

    const hash = href.indexOf("#");
    const raw = hash < 0 ? href : href.slice(0, hash);
    const fragment = hash < 0 ? "" : href.slice(hash + 1);
    if (raw === "") return { path: current, fragment };

    const dir = current.includes("/")
        ? current.slice(0, current.lastIndexOf("/") + 1)
        : "";
    const joined = raw.startsWith("/") ? raw : dir + raw;

    const resolved: string[] = [];
    for (const segment of joined.split("/")) {
        if (segment === "" || segment === ".") continue;
        if (segment === "..") {
            if (resolved.length === 0) return null;
            resolved.pop();
        } else {
            resolved.push(segment);
        }
    }

    let path = resolved.join("/");
    if (path.endsWith(".xml")) path = path.slice(0, -".xml".length);
    return { path, fragment };
}

/** Follow a decorated link: new document, same active contexts. */
export function traverse(state: ViewState, href: string): ViewState | null {
    if (state.doc === null) return null;
    const target = resolveHref(state.doc, href);
    return target === null ? null : { ...state, doc: target.path };
}
