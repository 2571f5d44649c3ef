/** QA chat view: question in, rendered answer with entity links out. */

import { ApiClient } from './api.js';
import { banner, bilingual, el } from './render.js';

export interface QaViewHooks {
    onScreeningRedirect?: () => void;
}

export class QaView {
    readonly root: HTMLElement;
    private log: HTMLElement;
    private input: HTMLInputElement;

    constructor(private api: ApiClient, private hooks: QaViewHooks = {}) {
        this.log = el('div', { class: 'qa-log' });
        this.input = el('input', {
            class: 'qa-input',
            type: 'text',
            placeholder: '请输入关于孤独症的问题…',
        });
        const send = el('button', { class: 'qa-send', type: 'button' }, '提问');
        send.addEventListener('click', () => void this.ask());
        this.input.addEventListener('keydown', (event) => {
            if ((event as KeyboardEvent).key === 'Enter') void this.ask();
        });
        this.root = el(
            'section',
            { class: 'qa-view' },
            this.log,
            el('div', { class: 'qa-form' }, this.input, send),
        );
    }

    async ask(question?: string): Promise<void> {
        const text = question ?? this.input.value.trim();
        if (!text) return;
        this.log.append(el('div', { class: 'qa-question' }, text));
        try {
            const result = await this.api.qa(text);
            const entry = el('div', { class: 'qa-answer', 'data-route': result.route });
            entry.append(el('p', {}, result.answer_text));
            if (result.entities.length > 0) {
                const list = el('ul', { class: 'qa-entities' });
                for (const iri of result.entities) {
                    const labels = result.entity_labels[iri] ?? {};
                    list.append(
                        el(
                            'li',
                            {},
                            el(
                                'a',
                                { href: this.api.entityUrl(iri), target: '_blank' },
                                bilingual(labels.zh, labels.en) || iri,
                            ),
                        ),
                    );
                }
                entry.append(list);
            }
            if (result.screening_redirect) {
                const link = el(
                    'a',
                    { class: 'qa-screening-link', href: '#screening' },
                    '前往辅助诊断：填写筛查量表',
                );
                link.addEventListener('click', () => this.hooks.onScreeningRedirect?.());
                entry.append(link);
            }
            this.log.append(entry);
        } catch {
            // network failure: banner, keep the input so the user can retry
            this.log.append(banner('error', '服务暂时不可用，请稍后重试'));
            return;
        }
        this.input.value = '';
    }
}
