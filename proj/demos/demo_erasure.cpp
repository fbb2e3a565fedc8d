// Two-mode squeezed vacuum vs. its reduced-state counterpart: the reduced
// description erases the entanglement witness carried by the covariance
// matrix while keeping every single-mode observable.

#include <cstdio>

#include <rsfkit/rsfkit.hpp>

int main(int argc, char** argv) {
    double s = 0.5;
    if (argc > 1) s = std::atof(argv[1]);

    const auto tmsv = rsfkit::tmsv_state(s);
    const auto sf = rsfkit::standard_form(tmsv);
    std::printf("two-mode squeezed vacuum, squeezing %.3f\n", s);
    std::printf("  standard form: a=%.6f b=%.6f c+=%.6f c-=%.6f\n", sf.a, sf.b,
                sf.c_plus, sf.c_minus);
    std::printf("  c+ c- < 0 (entanglement witness): %s\n",
                rsfkit::entanglement_necessary_condition(sf) ? "yes" : "no");

    const auto field = rsfkit::reduce(tmsv);
    const rsfkit::CMat r_alpha = field.r - field.alpha * field.alpha.adjoint();
    std::printf("\nreduced field r (diagonal): %.6f, %.6f\n", field.r(0, 0).real(),
                field.r(1, 1).real());

    const auto counterpart = rsfkit::separable_counterpart(r_alpha);
    const auto sf2 = rsfkit::standard_form(counterpart);
    std::printf("\nseparable counterpart of the reduced field\n");
    std::printf("  standard form: a=%.6f b=%.6f c+=%.6f c-=%.6f\n", sf2.a, sf2.b,
                sf2.c_plus, sf2.c_minus);
    std::printf("  c+ c- < 0 (entanglement witness): %s\n",
                rsfkit::entanglement_necessary_condition(sf2) ? "yes" : "no");
    return 0;
}
