"""Remainder tables for the narrow-stencil variable-coefficient
second derivative.

The interior remainder is a sum over grid nodes of small quadratic-form
"molecules" built on undivided-difference generators; near each boundary
the first coefficients carry symmetric block corrections.  The entries
below were computed by solving the defining constraints (accuracy,
bandwidth, positivity, borrowing) numerically; they are doubles.

Per order q the data is:
  GENERATORS[q]: list of (offsets, values) difference stencils.
  GAMMA[q]: stack of symmetric Gram matrices Gam_j, j = -J..J; the
      molecule centered at c contributes U_c Gam_j U_c^T weighted by
      b_{c+j}, with U_c holding the shifted generators as columns.
  FIRST_K[q]: the first coefficient index that carries interior forms;
      b_k for k < FIRST_K (and mirrored) does not enter R at all.
  DELTA[q]: stack of w x w corrections added to dR/db_k at the left
      boundary for k = FIRST_K, FIRST_K+1, ... (mirrored on the right).
"""

import numpy as np

GENERATORS = {
    2: [((-1, 0, 1), (1.0, -2.0, 1.0))],
    4: [((-2, -1, 1, 2), (-0.5, 1.0, -1.0, 0.5)),
        ((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0))],
    6: [((-2, -1, 0, 1, 2), (1.0, -4.0, 6.0, -4.0, 1.0)),
        ((-3, -2, -1, 1, 2, 3), (-0.5, 2.0, -2.5, 2.5, -2.0, 0.5)),
        ((-3, -2, -1, 0, 1, 2, 3),
         (1.0, -6.0, 15.0, -20.0, 15.0, -6.0, 1.0))],
}

GAMMA = {
    2: np.array([[[0.25]]]),
    4: np.array([[[0.05555555555555555, 0.0], [0.0, 0.020833333333333332]]]),
    6: np.array([[[-0.03737302138712528, 3.822087429136677e-06, -1.9110437145683383e-06],
     [3.822087429136677e-06, 2.1929908667283418e-05, -1.0964954333641709e-05],
     [-1.9110437145683383e-06, -1.0964954333641709e-05, 5.4824771668208545e-06]],
     [[0.041557029339767355, 0.14001335276758559, -0.032637477084096644],
     [0.14001335276758559, 9.818683763801994e-06, 0.03733853796171782],
     [-0.032637477084096644, 0.03733853796171782, 2.4546709409504985e-06]],
     [[0.0041319840947158515, 0.0, -0.10266149475386485],
     [0.0, -0.33427737253717, 0.0],
     [-0.10266149475386485, 0.0, -0.08329156535651473]],
     [[0.041557029339767355, -0.14001335276758559, -0.032637477084096644],
     [-0.14001335276758559, 9.818683763801994e-06, -0.03733853796171782],
     [-0.032637477084096644, -0.03733853796171782, 2.4546709409504985e-06]],
     [[-0.03737302138712528, -3.822087429136677e-06, -1.9110437145683383e-06],
     [-3.822087429136677e-06, 2.1929908667283418e-05, 1.0964954333641709e-05],
     [-1.9110437145683383e-06, 1.0964954333641709e-05, 5.4824771668208545e-06]]]),
}

FIRST_K = {2: 1, 4: 2, 6: 3}

DELTA = {
    2: np.zeros((0, 3, 3)),
    4: np.array([[[0.04493966454766339, -0.13807600485828822, 0.1475125781401571, -0.06347835074737673, 0.012024663769117936, -0.002922550851273463],
     [-0.13807600485828825, 0.42330293820599585, -0.45852680611575525, 0.2165228376941754, -0.06029698557362709, 0.017074020647499164],
     [0.14751257814015709, -0.4585268061157552, 0.5262231520784534, -0.3026344009424025, 0.12314367941167986, -0.03571820257213253],
     [-0.0634783507473767, 0.21652283769417544, -0.30263440094240246, 0.24354968413592298, -0.1278957624844567, 0.03393599234413739],
     [0.012024663769117936, -0.060296985573627095, 0.12314367941167985, -0.1278957624844567, 0.06742511018279251, -0.014400705305506488],
     [-0.0029225508512734665, 0.017074020647499168, -0.03571820257213255, 0.0339359923441374, -0.014400705305506484, 0.002031445737275926]],
     [[0.023268608336917067, -0.056143087512550455, 0.025029903064195492, 0.029082732513545248, -0.025025865854060546, 0.0037877094519531973],
     [-0.05614308751255045, 0.10187227337104483, 0.0475739587170707, -0.19252464125197605, 0.11555375043131301, -0.016332253754902038],
     [0.025029903064195502, 0.04757395871707072, -0.3528728318527079, 0.5228757126137447, -0.30257827985862595, 0.05997153731632299],
     [0.029082732513545255, -0.19252464125197602, 0.5228757126137445, -0.7043066154648308, 0.4646709955286059, -0.1197981839390888],
     [-0.02502586585406053, 0.11555375043131295, -0.30257827985862595, 0.46467099552860586, -0.3586928239362832, 0.10607222368905078],
     [0.0037877094519531947, -0.01633225375490203, 0.059971537316322994, -0.11979818393908878, 0.10607222368905078, -0.033701032763336136]],
     [[1.5888375822162942e-05, 0.00010002839282522946, -0.0005160622713479751, 0.0007891326988709197, -0.0005096340341096467, 0.00012064683793930957],
     [0.00010002839282522974, 0.01693857474584197, -0.035712402906749104, 0.004505476316943327, 0.02987181513886667, -0.01570349168772809],
     [-0.0005160622713479768, -0.035712402906749104, 0.08138015846599271, -0.024705435244004047, -0.049299681926233845, 0.028853423882342247],
     [0.0007891326988709196, 0.004505476316943327, -0.02470543524400405, 0.039192120841643, -0.026235504713401782, 0.006454210099948571],
     [-0.0005096340341096457, 0.029871815138866668, -0.04929968192623384, -0.026235504713401782, 0.08343096482058672, -0.03725795928570812],
     [0.00012064683793931014, -0.01570349168772809, 0.028853423882342247, 0.006454210099948572, -0.037257959285708124, 0.017533170153206074]]]),
    6: np.array([[[0.18598556099189106, -0.7831954863669083, 1.2718148186992777, -0.9915534571388476, 0.3933972745075535, -0.09770029333140784, 0.010539029780330124, 0.019796012535148417, -0.009083459677037203],
     [-0.7831954863669083, 3.2840392671680445, -5.288890707817641, 4.017396812254302, -1.4362543838360842, 0.26643645481948125, -0.057741558975812284, -0.01515950476918279, 0.013369107523801063],
     [1.271814818699277, -5.2888907078176395, 8.39926545704823, -6.140456572763916, 1.8514570465007665, -0.09702667287069026, 0.0538115521137999, -0.06796474495915197, 0.017989824049323026],
     [-0.9915534571388471, 4.017396812254301, -6.140456572763914, 4.174345656267462, -0.946266124522375, -0.2311554384318913, 0.13261883376145203, -0.0050457275608748854, -0.009883981865312015],
     [0.39339727450755324, -1.4362543838360835, 1.8514570465007667, -0.9462661245223756, 0.16711453437602417, 0.003718239544250295, -0.17681800283039156, 0.20321398392336795, -0.05956256766311185],
     [-0.09770029333140742, 0.26643645481948125, -0.09702667287069032, -0.23115543843189038, 0.003718239544250022, 0.38315539143267724, -0.26437847211397364, 0.0189022040513993, 0.018048586900153846],
     [0.01053902978033015, -0.05774155897581271, 0.05381155211379907, 0.13261883376145234, -0.17681800283039148, -0.26437847211397353, 0.6381617186455872, -0.4420008165296949, 0.10580771614870402],
     [0.019796012535148226, -0.015159504769182541, -0.06796474495915131, -0.005045727560876218, 0.20321398392336806, 0.01890220405139967, -0.44200081652969503, 0.39520462587409894, -0.1069460325651099],
     [-0.009083459677037135, 0.013369107523800966, 0.017989824049322877, -0.00988398186531168, -0.05956256766311194, 0.018048586900153787, 0.10580771614870395, -0.10694603256510991, 0.030260807148589086]],
     [[-0.01821851767538487, 0.09751479158452073, -0.20871287547495074, 0.20753454114313766, -0.06473172518720817, -0.03494171682020037, 0.010871093912577014, 0.0197590108297301, -0.009074602312221352],
     [0.0975147915845207, -0.4553421027938803, 0.8604763292207851, -0.8007261009263971, 0.3052396314767251, 0.052921167994013495, -0.0583152275852957, -0.015042658530079774, 0.013274169559608388],
     [-0.20871287547495068, 0.8604763292207849, -1.3930036738667744, 1.1479848550481717, -0.5483567956204809, 0.14490161320546438, 0.04460009128853288, -0.06601137249763475, 0.018121828696886874],
     [0.20753454114313746, -0.8007261009263971, 1.1479848550481722, -0.7924836752841234, 0.43121340018468923, -0.3562347204527717, 0.19076865481531535, -0.01837112553980989, -0.009685828988212066],
     [-0.06473172518720799, 0.3052396314767251, -0.5483567956204816, 0.43121340018468973, -0.14027914946741477, 0.15770801723066105, -0.3157751781965707, 0.2347930565308466, -0.05981125695124745],
     [-0.03494171682020056, 0.052921167994013765, 0.1449016132054645, -0.35623472045277177, 0.15770801723066047, 0.1379781336365319, -0.10433595475648376, -0.015245078684690584, 0.017248538647476032],
     [0.010871093912577196, -0.05831522758529607, 0.04460009128853306, 0.190768654815315, -0.3157751781965701, -0.10433595475648401, 0.5512001657067863, -0.4264977343691578, 0.10748408918429642],
     [0.01975901082973003, -0.015042658530079635, -0.06601137249763474, -0.018371125539809952, 0.23479305653084673, -0.015245078684690792, -0.4264977343691576, 0.3947088644265757, -0.10809296216577975],
     [-0.009074602312221344, 0.013274169559608398, 0.018121828696886798, -0.00968582898821195, -0.05981125695124763, 0.01724853864747622, 0.10748408918429628, -0.10809296216577972, 0.03053602432919294]],
     [[0.02038256842744102, -0.1573479534417833, 0.42646021348549185, -0.4974822954492505, 0.18336034357051, 0.077931849026344, -0.022442749982866366, -0.055326098389083624, 0.024464122753196864],
     [-0.15734795344178318, 1.3164385167997283, -3.6801839445076774, 4.316726646843603, -1.5336898811042015, -0.6926907491162759, 0.07623807672882961, 0.6015400610721988, -0.2470307732744215],
     [0.4264602134854919, -3.6801839445076783, 10.41432956010398, -12.273395121376627, 4.344755263129871, 1.993005061748279, -0.18556209475010302, -1.7563078983350706, 0.7168989605018553],
     [-0.4974822954492505, 4.316726646843604, -12.273395121376627, 14.565976674709663, -5.25585570211915, -2.394865605455461, 0.43913579149749477, 1.903007232248246, -0.8032476208985176],
     [0.18336034357051023, -1.533689881104202, 4.344755263129871, -5.255855702119149, 2.0383527197961016, 0.9210074781081283, -0.5325127956436406, -0.3717143712396653, 0.20629694550204594],
     [0.07793184902634365, -0.6926907491162757, 1.99300506174828, -2.3948656054554616, 0.9210074781081289, 0.2845175807508824, 0.0383964761331448, -0.3726974985606492, 0.14539540736560627],
     [-0.0224427499828661, 0.0762380767288298, -0.18556209475010335, 0.439135791497495, -0.5325127956436406, 0.03839647613314448, 0.49935823995383927, -0.4202856519582833, 0.10767470802158485],
     [-0.05532609838908368, 0.6015400610721989, -1.7563078983350706, 1.903007232248246, -0.37171437123966594, -0.3726974985606485, -0.4202856519582836, 0.7001608729336499, -0.22837664777134245],
     [0.02446412275319687, -0.24703077327442155, 0.7168989605018555, -0.8032476208985178, 0.2062969455020462, 0.145395407365606, 0.10767470802158495, -0.22837664777134245, 0.07792489779999216]],
     [[0.03464177540400428, -0.14772282198682854, 0.24266987778799842, -0.18378823478472123, 0.052658653088251794, 0.0042095266489945125, 0.0014632329620197248, -0.006342200352649449, 0.0022101912329304456],
     [-0.14772282198682846, 0.7575118517052464, -1.434065599648227, 0.986165787675207, 0.28526506198569274, -0.5618429101515199, -0.14824539366722939, 0.3937235433174804, -0.13078951922982157],
     [0.2426698777879985, -1.4340655996482274, 3.0186884792213196, -2.2254687039126875, -0.7495019622460283, 1.4817081352446126, 0.34686823309821035, -1.0285402034770266, 0.34764174393182873],
     [-0.18378823478472123, 0.986165787675207, -2.2254687039126875, 2.643493467000092, -1.6178404461837863, 0.32213977230014046, 0.12430828168455403, -0.041183842507393466, -0.007826081271404736],
     [0.05265865308825186, 0.2852650619856925, -0.7495019622460285, -1.617840446183786, 5.668601146000173, -4.439122619683584, -0.7383137095925848, 2.2876800400244703, -0.7494261633926043],
     [0.0042095266489944995, -0.5618429101515199, 1.481708135244613, 0.3221397723001403, -4.439122619683584, 4.3296984138001395, -0.12054490795946095, -1.5932384618468625, 0.5769930516475396],
     [0.0014632329620197617, -0.14824539366722958, 0.3468682330982102, 0.12430828168455398, -0.7383137095925849, -0.12054490795946106, 1.4175934121904743, -1.1970361771698061, 0.3139070284538236],
     [-0.006342200352649423, 0.39372354331748033, -1.0285402034770266, -0.04118384250739342, 2.287680040024471, -1.593238461846863, -1.1970361771698061, 1.6949008127802774, -0.5099635107684901],
     [0.0022101912329304343, -0.13078951922982157, 0.3476417439318286, -0.00782608127140469, -0.7494261633926043, 0.5769930516475398, 0.31390702845382357, -0.5099635107684901, 0.15725325939619839]],
     [[0.0023416960013592733, -0.07968751846087743, 0.25349873376954785, -0.21251083603354576, -0.13456457479666828, 0.25132015418576126, -0.016075260344669943, -0.10291080391556176, 0.03858840959465478],
     [-0.07968751846087704, 2.917973073685505, -9.071912343741461, 6.629860952969504, 6.9323299715295486, -10.256239086167428, -0.09137097473908846, 4.715997251352018, -1.69695132642772],
     [0.2534987337695493, -9.071912343741467, 28.659357188817992, -22.748424100753063, -18.221946054628635, 30.50588438954157, -1.1798989925689167, -13.008697058081129, 4.812138237644106],
     [-0.2125108360335454, 6.629860952969504, -22.748424100753066, 25.433968397821072, -1.0083895242122616, -15.482170402354123, 6.106749282001104, 2.8783333728041307, -1.597417142242813],
     [-0.13456457479666895, 6.932329971529552, -18.221946054628646, -1.0083895242122622, 44.72864298492573, -39.48768841992811, -8.306827896031544, 23.085979858644176, -7.587536345502231],
     [0.25132015418576165, -10.25623908616743, 30.50588438954157, -15.482170402354123, -39.48768841992811, 47.54920929387919, -0.14400268933679064, -20.25021077904449, 7.313897539224428],
     [-0.016075260344670005, -0.09137097473908927, -1.1798989925689152, 6.106749282001103, -8.306827896031542, -0.14400268933679058, 9.272865271894029, -7.572564440312536, 1.9311256994384125],
     [-0.10291080391556208, 4.715997251352018, -13.008697058081129, 2.878333372804129, 23.085979858644183, -20.25021077904449, -7.572564440312535, 15.023662939508341, -4.7695903409549505],
     [0.038588409594654885, -1.69695132642772, 4.812138237644106, -1.5974171422428134, -7.587536345502232, 7.313897539224425, 1.9311256994384123, -4.769590340954951, 1.555745269226117]],
     [[0.0002605931246122831, -0.014316866391565826, 0.03490986456960525, 0.01527163194291578, -0.11522225503308708, 0.0964725180376013, 0.018909274846220448, -0.05403111106104427, 0.01774634996474215],
     [-0.014316866391565711, 0.839900657714341, -2.0490152209861785, -0.9010139238802756, 6.752650291736362, -5.614936010493347, -1.1627677183800025, 3.19413357374519, -1.0446347830645237],
     [0.03490986456960562, -2.0490152209861785, 5.012117624287816, 2.1773104657252094, -16.557513706772376, 13.975178002699364, 2.516522643727595, -7.623954912470319, 2.514445239219285],
     [0.015271631942916074, -0.9010139238802763, 2.1773104657252094, 0.9997667277827001, -7.111909648852389, 5.584037950084729, 1.7557064862391574, -3.6936602489690933, 1.1744905599270483],
     [-0.1152222550330868, 6.7526502917363596, -16.557513706772372, -7.111909648852392, 54.8190396716371, -46.89710199149655, -7.32056295076047, 24.61412967246858, -8.18350908292717],
     [0.09647251803760201, -5.614936010493348, 13.975178002699357, 5.584037950084728, -46.897101991496534, 43.36476776831288, 1.0326848180102541, -17.80975081244019, 6.268647757285255],
     [0.018909274846219813, -1.1627677183800011, 2.5165226437275936, 1.7557064862391571, -7.320562950760471, 1.0326848180102548, 9.409081122512498, -8.52353335968496, 2.2739596834897116],
     [-0.054031111061044634, 3.1941335737451904, -7.623954912470318, -3.693660248969093, 24.614129672468575, -17.809750812440186, -8.523533359684961, 14.305145058755564, -4.40847786034373],
     [0.017746349964742118, -1.0446347830645242, 2.5144452392192855, 1.1744905599270485, -8.18350908292717, 6.268647757285254, 2.273959683489712, -4.408477860343729, 1.3873321364493818]]]),
}
