/** Client-side screening session state, mirroring the server session. */

import type { QuestionDetail, ToolDetail } from './api.js';

export class WizardError extends Error {}

export class ScreeningWizard {
    readonly tool: ToolDetail;
    private chosen = new Map<string, string>();
    private cursor = 0;

    constructor(tool: ToolDetail) {
        if (tool.questions.length === 0) {
            throw new WizardError('scale has no questions');
        }
        this.tool = tool;
    }

    get questions(): QuestionDetail[] {
        return this.tool.questions;
    }

    get current(): QuestionDetail {
        return this.tool.questions[this.cursor];
    }

    get index(): number {
        return this.cursor;
    }

    get total(): number {
        return this.tool.questions.length;
    }

    /** Chosen options must come from the rendered question's option list. */
    choose(questionIri: string, optionIri: string): void {
        const question = this.tool.questions.find((q) => q.iri === questionIri);
        if (!question) {
            throw new WizardError(`question not in this scale: ${questionIri}`);
        }
        if (!question.options.some((o) => o.iri === optionIri)) {
            throw new WizardError(`option not in question: ${optionIri}`);
        }
        this.chosen.set(questionIri, optionIri);
    }

    choiceFor(questionIri: string): string | undefined {
        return this.chosen.get(questionIri);
    }

    next(): boolean {
        if (this.cursor + 1 >= this.total) return false;
        this.cursor += 1;
        return true;
    }

    prev(): boolean {
        if (this.cursor === 0) return false;
        this.cursor -= 1;
        return true;
    }

    goto(index: number): void {
        if (index < 0 || index >= this.total) {
            throw new WizardError(`question index out of range: ${index}`);
        }
        this.cursor = index;
    }

    unanswered(): QuestionDetail[] {
        return this.tool.questions.filter((q) => !this.chosen.has(q.iri));
    }

    get complete(): boolean {
        return this.unanswered().length === 0;
    }

    get answeredCount(): number {
        return this.chosen.size;
    }

    /** (question, option) pairs in scale order; throws when incomplete. */
    answers(): Array<{ question: string; option: string }> {
        const missing = this.unanswered();
        if (missing.length > 0) {
            throw new WizardError(
                `unanswered questions: ${missing.map((q) => q.text).join('; ')}`,
            );
        }
        return this.tool.questions.map((q) => ({
            question: q.iri,
            option: this.chosen.get(q.iri) as string,
        }));
    }
}
