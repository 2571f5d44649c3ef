import { describe, expect, it } from 'vitest';

import type { ToolDetail } from '../src/api.js';
import { ScreeningWizard, WizardError } from '../src/state.js';

function makeTool(questionCount = 3): ToolDetail {
    return {
        iri: 'i/tool_x',
        name: '测试量表',
        introduction: '',
        author: '',
        user: ['parent'],
        age_min: 1,
        age_max: 10,
        time_minutes: 5,
        rule: '',
        boundary: 3,
        polarity: 'ascending_risk',
        language: 'zh',
        questions: Array.from({ length: questionCount }, (_, i) => ({
            iri: `i/q${i}`,
            text: `问题${i}`,
            has_explanation: false,
            options: [
                { iri: `i/q${i}o0`, text: '从不', score: 0 },
                { iri: `i/q${i}o1`, text: '经常', score: 2 },
            ],
        })),
    };
}

describe('ScreeningWizard', () => {
    it('starts at the first question with nothing answered', () => {
        const wizard = new ScreeningWizard(makeTool());
        expect(wizard.index).toBe(0);
        expect(wizard.answeredCount).toBe(0);
        expect(wizard.complete).toBe(false);
        expect(wizard.unanswered()).toHaveLength(3);
    });

    it('rejects a tool without questions', () => {
        const tool = makeTool(0);
        expect(() => new ScreeningWizard(tool)).toThrow(WizardError);
    });

    it('records choices and overwrites on re-answer', () => {
        const wizard = new ScreeningWizard(makeTool());
        wizard.choose('i/q0', 'i/q0o0');
        wizard.choose('i/q0', 'i/q0o1');
        expect(wizard.answeredCount).toBe(1);
        expect(wizard.choiceFor('i/q0')).toBe('i/q0o1');
    });

    it('rejects options from another question', () => {
        const wizard = new ScreeningWizard(makeTool());
        expect(() => wizard.choose('i/q0', 'i/q1o0')).toThrow(WizardError);
        expect(() => wizard.choose('i/q9', 'i/q0o0')).toThrow(WizardError);
    });

    it('navigates forward and backward within bounds', () => {
        const wizard = new ScreeningWizard(makeTool());
        expect(wizard.prev()).toBe(false);
        expect(wizard.next()).toBe(true);
        expect(wizard.next()).toBe(true);
        expect(wizard.next()).toBe(false);
        expect(wizard.index).toBe(2);
        wizard.goto(0);
        expect(wizard.current.iri).toBe('i/q0');
        expect(() => wizard.goto(5)).toThrow(WizardError);
    });

    it('blocks answers extraction until complete, then returns scale order', () => {
        const wizard = new ScreeningWizard(makeTool());
        wizard.choose('i/q1', 'i/q1o1');
        expect(() => wizard.answers()).toThrow(/问题0/);
        wizard.choose('i/q0', 'i/q0o0');
        wizard.choose('i/q2', 'i/q2o1');
        expect(wizard.complete).toBe(true);
        expect(wizard.answers()).toEqual([
            { question: 'i/q0', option: 'i/q0o0' },
            { question: 'i/q1', option: 'i/q1o1' },
            { question: 'i/q2', option: 'i/q2o1' },
        ]);
    });
});
