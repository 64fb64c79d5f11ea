from twisted_link import automorphism_from_images


def power_map(G, k):
    """x -> x^k on a cyclic group, given by the image of its generator"""
    s = G.generator_ids[0]
    return automorphism_from_images(G, [G.power(s, k)])
