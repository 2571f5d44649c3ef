/** Application shell: API base resolution and tabbed navigation. */

import { ApiClient } from './api.js';
import { el } from './render.js';
import { QaView } from './qa.js';
import { ScreeningView } from './screening.js';
import { ExpertsView } from './experts.js';

export function resolveApiBase(): string {
    const fromQuery = new URLSearchParams(window.location.search).get('api');
    if (fromQuery) return fromQuery;
    const fromGlobal = (window as unknown as { ASDKB_API_BASE?: string }).ASDKB_API_BASE;
    if (fromGlobal) return fromGlobal;
    return window.location.origin;
}

export function mount(root: HTMLElement, api: ApiClient): {
    qa: QaView;
    screening: ScreeningView;
    experts: ExpertsView;
    show: (tab: string) => void;
} {
    const experts = new ExpertsView(api);
    const screening = new ScreeningView(api, { onFindExperts: () => show('experts') });
    const qa = new QaView(api, { onScreeningRedirect: () => show('screening') });

    const panels: Record<string, HTMLElement> = {
        qa: qa.root,
        screening: screening.root,
        experts: experts.root,
    };
    const nav = el('nav', { class: 'tabs' });
    const body = el('main', { class: 'panel' });

    function show(tab: string): void {
        for (const button of Array.from(nav.children)) {
            button.classList.toggle('active', (button as HTMLElement).dataset.tab === tab);
        }
        body.replaceChildren(panels[tab]);
    }

    for (const [tab, label] of [
        ['qa', '问答'],
        ['screening', '辅助诊断'],
        ['experts', '找专家'],
    ] as const) {
        const button = el('button', { type: 'button', 'data-tab': tab }, label);
        button.addEventListener('click', () => show(tab));
        nav.append(button);
    }

    root.append(el('h1', {}, 'AsdKB 孤独症知识库'), nav, body);
    show('qa');
    void experts.load();
    return { qa, screening, experts, show };
}

if (typeof document !== 'undefined' && document.getElementById('app')) {
    const api = new ApiClient(resolveApiBase());
    mount(document.getElementById('app') as HTMLElement, api);
}
