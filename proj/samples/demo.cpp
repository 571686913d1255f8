// Walk through the pipeline on one function.

#include <iostream>

#include "uct/uct.hpp"

int main(int argc, char** argv) {
    const char* text = argc > 1 ? argv[1] : "x*x - x/2";
    auto f = uct::parse(text);
    auto eps = uct::Dyadic::parse("1/8");

    auto w = uct::find_witnesses(f, eps, uct::Dyadic::parse("1/2"), 6);
    std::cout << "witness at delta 1/2: " << uct::to_json(w).dump() << '\n';

    auto cert = uct::extract_modulus(f, eps);
    std::cout << "modulus: " << uct::to_json(cert).dump() << '\n';

    auto v = uct::verify_modulus(f, eps, cert.delta());
    std::cout << "verdict: " << uct::to_string(v.verdict) << '\n';
}
