export interface ContextInfo {
    path: string;
    creator: string;
    title: string;
    description: string;
}

export interface LinkRecord {
    link: string;
    source: string;
    target: string;
    arcrole: string;
    title: string | null;
}

export const DEFAULT_BASE = "http://127.0.0.1:8000";

// Logical paths contain slashes that must survive as path separators;
// everything else gets percent-encoded per segment.
const encodePath = (path: string) =>
    path.split("/").map(encodeURIComponent).join("/");

const withContexts = (url: string, contexts: string[]) => {
    const query = new URLSearchParams(contexts.map((c) => ["context", c]));
    return contexts.length ? `${url}?${query}` : url;
};

export const documentsURL = (base: string) => `${base}/api/documents`;

export const contextsURL = (base: string) => `${base}/api/contexts`;

export const documentURL = (base: string, path: string, contexts: string[]) =>
    withContexts(`${base}/api/documents/${encodePath(path)}`, contexts);

export const linksURL = (base: string, path: string, contexts: string[]) =>
    withContexts(`${base}/api/links/${encodePath(path)}`, contexts);

export const reloadURL = (base: string) => `${base}/api/reload`;

async function expectOk(url: string, init?: RequestInit): Promise<Response> {
    const res = await fetch(url, init);
    if (!res.ok) {
        let detail = "";
        try {
            detail = (await res.json()).detail ?? "";
        } catch {
            // non-JSON error body; the status is all we have
        }
        throw new Error(`${res.status} for ${url}${detail ? `: ${detail}` : ""}`);
    }
    return res;
}

export async function fetchJSON<T>(url: string): Promise<T> {
    const res = await expectOk(url);
    return res.json() as Promise<T>;
}

export const fetchDocuments = (base: string) =>
    fetchJSON<string[]>(documentsURL(base));

export const fetchContexts = (base: string) =>
    fetchJSON<ContextInfo[]>(contextsURL(base));

export const fetchLinks = (base: string, path: string, contexts: string[]) =>
    fetchJSON<LinkRecord[]>(linksURL(base, path, contexts));

export async function fetchDocument(
    base: string, path: string, contexts: string[],
): Promise<string> {
    const res = await expectOk(documentURL(base, path, contexts));
    return res.text();
}
