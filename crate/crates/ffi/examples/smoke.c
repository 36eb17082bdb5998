#include "anf_tdepth.h"
#include <stdio.h>
#include <string.h>

int main(void) {
    AnfFunction *f = NULL;
    if (anf_tdepth_parse_anf("x0 + x1*x2\nx0 + x1 + x0*x2\nx0 + x1 + x2 + x0*x1", &f) != ANF_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", anf_tdepth_last_error());
        return 1;
    }
    printf("n=%u m=%u deg=%u f(0b011)=%llu\n",
           anf_tdepth_function_inputs(f), anf_tdepth_function_outputs(f),
           anf_tdepth_function_degree(f),
           (unsigned long long)anf_tdepth_function_evaluate(f, 3));

    AnfSynthesis *s = NULL;
    if (anf_tdepth_synthesize(f, ANF_VARIANT_T_DEPTH1, &s) != ANF_STATUS_OK) {
        fprintf(stderr, "synth: %s\n", anf_tdepth_last_error());
        return 1;
    }
    if (anf_tdepth_synthesis_verify(s, f) != ANF_STATUS_OK) {
        fprintf(stderr, "verify: %s\n", anf_tdepth_last_error());
        return 1;
    }
    char *json = NULL;
    anf_tdepth_synthesis_report_json(s, &json);
    printf("report has t_count 12: %s\n", strstr(json, "\"t_count\": 12") ? "yes" : "no");
    anf_tdepth_string_free(json);

    char *est = NULL;
    anf_tdepth_estimate_json(8, 8, ANF_VARIANT_T_DEPTH1, &est);
    printf("estimate has 2801: %s\n", strstr(est, "2801") ? "yes" : "no");
    anf_tdepth_string_free(est);

    anf_tdepth_synthesis_free(s);
    anf_tdepth_function_free(f);
    puts("ffi smoke: ok");
    return 0;
}
