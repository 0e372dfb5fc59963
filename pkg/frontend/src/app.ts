/** Page bootstrap: bind the controller to the live DOM. */

import { PabedClient } from "./api.js";
import { DashboardController, DashboardView, ResultPanel } from "./controller.js";

function el<T extends HTMLElement>(id: string): T {
  const found = document.getElementById(id);
  if (!found) throw new Error(`missing element #${id}`);
  return found as T;
}

function buildView(): DashboardView {
  const status = el<HTMLParagraphElement>("catalog-status");
  const options = el<HTMLDataListElement>("year-options");
  const validation = el<HTMLParagraphElement>("validation-message");
  const banner = el<HTMLDivElement>("error-banner");
  const submit = el<HTMLButtonElement>("submit");
  const results = el<HTMLElement>("results");

  return {
    setCatalogStatus(text) {
      status.textContent = text;
    },
    setYearOptions(years) {
      options.replaceChildren(
        ...years.map((year) => {
          const option = document.createElement("option");
          option.value = year;
          return option;
        }),
      );
    },
    setValidationMessage(text) {
      validation.textContent = text ?? "";
      validation.hidden = text === null;
    },
    setErrorBanner(text) {
      banner.textContent = text ?? "";
      banner.hidden = text === null;
    },
    setSubmitting(submitting) {
      submit.disabled = submitting;
    },
    renderResult(panel: ResultPanel) {
      el<HTMLElement>("result-column").textContent = panel.column;
      el<HTMLElement>("first-year").textContent = panel.firstYear;
      el<HTMLElement>("first-total").textContent = panel.firstTotal;
      el<HTMLElement>("second-year").textContent = panel.secondYear;
      el<HTMLElement>("second-total").textContent = panel.secondTotal;
      el<HTMLElement>("delta").textContent = panel.delta;
      el<HTMLElement>("pct-change").textContent = panel.pctChange;
      el<HTMLElement>("chart").innerHTML = panel.chartSvg;
      results.hidden = false;
    },
  };
}

function main(): void {
  const controller = new DashboardController(new PabedClient(""), buildView());

  const form = el<HTMLFormElement>("compare-form");
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    void controller.submit({
      year1: el<HTMLInputElement>("year1").value,
      year2: el<HTMLInputElement>("year2").value,
      column: el<HTMLInputElement>("column").value,
    });
  });

  void controller.init();
}

document.addEventListener("DOMContentLoaded", main);
