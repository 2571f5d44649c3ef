/** Small DOM helpers; all text goes through textContent, never innerHTML. */

type Child = Node | string | null | undefined;

export function el<K extends keyof HTMLElementTagNameMap>(
    tag: K,
    attrs: Record<string, string> = {},
    ...children: Child[]
): HTMLElementTagNameMap[K] {
    const node = document.createElement(tag);
    for (const [key, value] of Object.entries(attrs)) {
        if (key === 'class') node.className = value;
        else node.setAttribute(key, value);
    }
    for (const child of children) {
        if (child === null || child === undefined) continue;
        node.append(typeof child === 'string' ? document.createTextNode(child) : child);
    }
    return node;
}

export function clear(node: Element): void {
    while (node.firstChild) node.removeChild(node.firstChild);
}

/** zh primary, en secondary where present. */
export function bilingual(zh?: string, en?: string): string {
    if (zh && en) return `${zh} (${en})`;
    return zh ?? en ?? '';
}

export function banner(kind: 'error' | 'info', text: string): HTMLElement {
    return el('div', { class: `banner banner-${kind}`, role: 'alert' }, text);
}
