from .spec import (
    DistributionSpec, OneForm, Pair, ConversionError, one_form_to_pair, pair_to_one_form,
    one_form_from_strings, pair_from_strings, check_well_formed, fixture, FIXTURES,
    martinet, heisenberg, twoplanes, tangential,
)
from .surface import (
    MartinetData, martinet_function, characteristic_field, tangency_locus, TangencyLocus,
    classify_point, PointClass, hormander_check, sample_sigma_points, restricted_parallel,
    iterated_brackets, MAX_BRACKET_DEPTH, STRATA,
)
