// String-level views of a decorated document body. The server marks every
// materialized link with a data-link attribute on the wrapper; the viewer
// adds no link semantics of its own, it only finds what is already there.

const DECORATED = /<a\b[^>]*?\bdata-link="([^"]*)"/g;

/** data-link values in document order, one per displayed link. */
export function linkIds(xhtml: string): string[] {
    return [...xhtml.matchAll(DECORATED)].map((m) => m[1] as string);
}

export function countDecorated(xhtml: string): number {
    return linkIds(xhtml).length;
}
