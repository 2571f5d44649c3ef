/** Screening flow: conditions -> scale list -> question wizard -> result. */

import { ApiClient, ScoreResponse, ToolSummary } from './api.js';
import { banner, bilingual, clear, el } from './render.js';
import { ScreeningWizard } from './state.js';

export interface ScreeningHooks {
    onFindExperts?: () => void;
}

export class ScreeningView {
    readonly root: HTMLElement;
    private stage: HTMLElement;
    private pendingAnswers: Promise<unknown>[] = [];
    wizard: ScreeningWizard | null = null;
    sessionId: string | null = null;
    lastResult: ScoreResponse | null = null;

    constructor(private api: ApiClient, private hooks: ScreeningHooks = {}) {
        this.stage = el('div', { class: 'screening-stage' });
        this.root = el('section', { class: 'screening-view' }, this.stage);
        this.renderConditions();
    }

    // stage 1: screening conditions
    renderConditions(): void {
        clear(this.stage);
        const age = el('input', {
            class: 'cond-age',
            type: 'number',
            min: '0',
            step: '0.5',
            value: '3',
        });
        const filler = el('select', { class: 'cond-filler' });
        for (const [value, label] of [
            ['parent', '家长'],
            ['teacher', '教师'],
            ['clinician', '专业人员'],
            ['self', '本人'],
        ]) {
            filler.append(el('option', { value }, label));
        }
        const lang = el('select', { class: 'cond-lang' });
        for (const [value, label] of [
            ['', '不限语言'],
            ['zh', '中文'],
            ['en', '英文'],
        ]) {
            lang.append(el('option', { value }, label));
        }
        const keyword = el('input', {
            class: 'cond-keyword',
            type: 'text',
            placeholder: '按症状关键词过滤量表简介（可选）',
        });
        const submit = el('button', { class: 'cond-submit', type: 'button' }, '查找量表');
        submit.addEventListener('click', () =>
            void this.loadTools(
                Number(age.value),
                filler.value,
                lang.value || undefined,
                keyword.value.trim(),
            ),
        );
        this.stage.append(
            el(
                'form',
                { class: 'conditions-form' },
                el('label', {}, '孩子年龄（岁）', age),
                el('label', {}, '填写人', filler),
                el('label', {}, '量表语言', lang),
                el('label', {}, '现有症状', keyword),
                submit,
            ),
        );
    }

    // stage 2: matching scales with introductions
    async loadTools(
        age: number,
        filler: string,
        lang: string | undefined,
        keyword: string,
    ): Promise<void> {
        let tools: ToolSummary[];
        try {
            tools = await this.api.tools(age, filler, lang);
        } catch {
            this.stage.append(banner('error', '服务暂时不可用，请稍后重试'));
            return;
        }
        if (keyword) {
            // client-side symptom keyword filter over introductions
            tools = tools.filter(
                (t) => t.introduction.includes(keyword) || t.name.includes(keyword),
            );
        }
        clear(this.stage);
        const list = el('div', { class: 'tool-list' });
        if (tools.length === 0) {
            list.append(banner('info', '没有符合条件的量表，请调整筛查条件'));
        }
        for (const tool of tools) {
            const start = el('button', { class: 'tool-start', type: 'button' }, '开始填写');
            start.addEventListener('click', () => void this.startScale(tool.iri));
            list.append(
                el(
                    'article',
                    { class: 'tool-card', 'data-iri': tool.iri },
                    el('h3', {}, tool.name),
                    el('p', { class: 'tool-intro' }, tool.introduction),
                    el(
                        'p',
                        { class: 'tool-meta' },
                        `适用年龄 ${tool.age_min}–${tool.age_max} 岁 · ` +
                            `约 ${tool.time_minutes} 分钟 · ${tool.questions.length} 题`,
                    ),
                    start,
                ),
            );
        }
        const back = el('button', { class: 'tool-back', type: 'button' }, '返回条件选择');
        back.addEventListener('click', () => this.renderConditions());
        this.stage.append(list, back);
    }

    // stage 3: sequential question form
    async startScale(toolIri: string): Promise<void> {
        const detail = await this.api.toolDetail(toolIri);
        const session = await this.api.createSession(toolIri);
        this.wizard = new ScreeningWizard(detail);
        this.sessionId = session.session_id;
        this.pendingAnswers = [];
        this.renderQuestion();
    }

    renderQuestion(): void {
        const wizard = this.wizard;
        if (!wizard) return;
        clear(this.stage);
        const question = wizard.current;
        const header = el(
            'p',
            { class: 'wizard-progress' },
            `第 ${wizard.index + 1} / ${wizard.total} 题 · 已答 ${wizard.answeredCount}`,
        );
        const prompt = el('h3', { class: 'wizard-question' }, question.text);
        const options = el('div', { class: 'wizard-options', role: 'radiogroup' });
        for (const option of question.options) {
            const id = `opt-${option.iri.split('/').pop()}`;
            const radio = el('input', {
                type: 'radio',
                name: question.iri,
                id,
                value: option.iri,
            }) as HTMLInputElement;
            if (wizard.choiceFor(question.iri) === option.iri) radio.checked = true;
            radio.addEventListener('change', () => {
                wizard.choose(question.iri, option.iri);
                if (this.sessionId) {
                    this.pendingAnswers.push(
                        this.api.answer(this.sessionId, question.iri, option.iri),
                    );
                }
            });
            options.append(
                el('label', { class: 'wizard-option', for: id }, radio, option.text),
            );
        }
        const controls = el('div', { class: 'wizard-controls' });
        const prev = el('button', { type: 'button', class: 'wizard-prev' }, '上一题');
        prev.addEventListener('click', () => {
            if (wizard.prev()) this.renderQuestion();
        });
        controls.append(prev);
        if (wizard.index + 1 < wizard.total) {
            const next = el('button', { type: 'button', class: 'wizard-next' }, '下一题');
            next.addEventListener('click', () => {
                if (wizard.next()) this.renderQuestion();
            });
            controls.append(next);
        }
        const submit = el('button', { type: 'button', class: 'wizard-submit' }, '提交评分');
        submit.addEventListener('click', () => void this.submit());
        controls.append(submit);

        this.stage.append(header, prompt, options, controls);

        if (question.has_explanation) {
            const toggle = el(
                'button',
                { type: 'button', class: 'explain-toggle' },
                '这道题考察什么症状？',
            );
            const box = el('div', { class: 'explain-box', hidden: '' });
            toggle.addEventListener('click', () => {
                void this.api.explanation(question.iri).then((symptoms) => {
                    clear(box);
                    for (const symptom of symptoms) {
                        box.append(
                            el(
                                'p',
                                { class: 'explain-symptom' },
                                bilingual(symptom.label_zh, symptom.label_en),
                            ),
                        );
                    }
                    box.removeAttribute('hidden');
                });
            });
            this.stage.append(toggle, box);
        }
    }

    /** Incomplete submissions are blocked client-side with the gaps named. */
    async submit(): Promise<void> {
        const wizard = this.wizard;
        if (!wizard || !this.sessionId) return;
        const missing = wizard.unanswered();
        if (missing.length > 0) {
            const existing = this.stage.querySelector('.banner-error');
            existing?.remove();
            this.stage.append(
                banner(
                    'error',
                    `还有未回答的问题：${missing.map((q) => q.text).join('；')}`,
                ),
            );
            return;
        }
        await Promise.all(this.pendingAnswers);
        const result = await this.api.score(this.sessionId);
        this.lastResult = result;
        this.renderResult(result);
    }

    // stage 4: risk verdict with explanations
    renderResult(result: ScoreResponse): void {
        clear(this.stage);
        const verdict = result.at_risk ? '存在孤独症风险' : '未见明显风险';
        this.stage.append(
            el('h3', { class: 'result-verdict', 'data-risk': String(result.at_risk) }, verdict),
            el(
                'p',
                { class: 'result-score' },
                `总分 ${result.total} / 界值 ${result.boundary}`,
            ),
        );
        if (result.at_risk) {
            this.stage.append(
                el('p', { class: 'result-advice' }, '建议尽快寻求专业医疗评估。'),
            );
            const find = el(
                'button',
                { type: 'button', class: 'result-experts' },
                '查找附近的专业医生',
            );
            find.addEventListener('click', () => this.hooks.onFindExperts?.());
            this.stage.append(find);
        }
        if (result.explanations.length > 0) {
            const list = el('ul', { class: 'result-explanations' });
            for (const pair of result.explanations) {
                list.append(
                    el(
                        'li',
                        {},
                        el('span', { class: 'explain-option' }, `选项「${pair.option_text}」`),
                        ' 符合诊断标准：',
                        el('span', { class: 'explain-standard' }, pair.standard_text),
                    ),
                );
            }
            this.stage.append(el('h4', {}, '结果解释'), list);
        }
        const again = el('button', { type: 'button', class: 'result-restart' }, '再测一个量表');
        again.addEventListener('click', () => this.renderConditions());
        this.stage.append(again);
    }
}
